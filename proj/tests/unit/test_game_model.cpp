#include <random>

#include "doctest.h"
#include "persuasion/game_model.hpp"
#include "support/oracles.hpp"

using namespace persuasion;

namespace {

RawConfig two_types() {
    RawConfig raw;
    raw.cost = LlrCost{1.0, 1.0};
    raw.beta_bar = 0.7;
    raw.types = {{0.3, 0.5}, {0.5, 0.5}};
    return raw;
}

bool has_error(const ConfigValidation& v, const std::string& msg) {
    for (const auto& e : v.errors)
        if (e.message == msg) return true;
    return false;
}

}  // namespace

TEST_CASE("experiment canonicalizes the diagonal") {
    const auto a = Experiment::make(0.4, 0.4);
    CHECK(a.is_uninformative());
    CHECK(a.p() == 0.0);
    CHECK(a.q() == 0.0);
    CHECK(a == Experiment::make(0.9, 0.9));
    CHECK(a == Experiment::uninformative());
    CHECK_FALSE(Experiment::make(0.8, 0.2).is_uninformative());
    CHECK_THROWS_AS(Experiment::make(0.2, 0.8), std::invalid_argument);
    CHECK_THROWS_AS(Experiment::make(1.1, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(Experiment::make(0.5, -0.1), std::invalid_argument);
}

TEST_CASE("q_ratio and its inverse") {
    CHECK(q_ratio(0.7, 0.7) == doctest::Approx(1.0));
    CHECK(q_ratio(1.0 / 3.0, 0.5) == doctest::Approx(0.5));
    CHECK(q_ratio(0.2, 0.7) < q_ratio(0.3, 0.7));
    CHECK_THROWS_AS(q_ratio(0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(q_ratio(0.5, 1.0), std::domain_error);
    CHECK(q_ratio_inv(1.0, 0.7) == doctest::Approx(0.7));
    CHECK(q_ratio_inv(0.5, 0.5) == doctest::Approx(1.0 / 3.0));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const double r = std::exp(oracle::uniform(rng, std::log(1e-6), std::log(1e6)));
        const double bb = oracle::uniform(rng, 0.05, 0.95);
        const double err = std::abs(q_ratio(q_ratio_inv(r, bb), bb) - r);
        if (r <= 1.0) {
            CHECK(err <= 1e-12);
        } else {
            // Storing a belief near 1 costs ~odds ulps of relative precision.
            const double odds = r * bb / (1 - bb);
            CHECK(err / r <= 4 * std::numeric_limits<double>::epsilon() * (1 + odds));
        }
    }
}

TEST_CASE("posterior") {
    const auto pi = Experiment::make(0.8, 0.2);
    CHECK(posterior(0.4, Experiment::uninformative(), Outcome::Good) == 0.4);
    CHECK(posterior(0.5, pi, Outcome::Good) == doctest::Approx(0.8));
    CHECK(posterior(0.5, pi, Outcome::Bad) == doctest::Approx(0.2));
    CHECK_THROWS_AS(posterior(0.5, 0.0, 0.0, Outcome::Good), std::domain_error);
    CHECK_THROWS_AS(posterior(0.5, 1.0, 1.0, Outcome::Bad), std::domain_error);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const auto e = oracle::random_interior(rng);
        const double beta = oracle::uniform(rng, 0.01, 0.99);
        const double pg = beta * e.p() + (1 - beta) * e.q();
        const double g = posterior(beta, e, Outcome::Good);
        const double b = posterior(beta, e, Outcome::Bad);
        CHECK(g >= 0.0);
        CHECK(g <= 1.0);
        CHECK(std::abs(pg * g + (1 - pg) * b - beta) <= 1e-12);
    }
}

TEST_CASE("persuasiveness") {
    CHECK_FALSE(is_persuasive(Experiment::uninformative(), 0.5, 0.7));
    CHECK(is_persuasive(Experiment::uninformative(), 0.7, 0.7));
    CHECK(is_persuasive(Experiment::make(0.8, 0.2), 0.5, 0.7));
    CHECK_FALSE(is_persuasive(Experiment::make(0.5, 0.4), 0.5, 0.7));

    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const auto e = oracle::random_interior(rng);
        const double bb = oracle::uniform(rng, 0.1, 0.9);
        const double b1 = oracle::uniform(rng, 0.01, 0.99);
        const double b2 = oracle::uniform(rng, b1, 0.999);
        if (is_persuasive(e, b1, bb)) CHECK(is_persuasive(e, b2, bb));
        CHECK(is_persuasive(e, b1, bb) == (posterior(b1, e, Outcome::Good) >= bb - 1e-15 &&
                                           e.q() / e.p() <= q_ratio(b1, bb) * (1 + 1e-12)));
    }
}

TEST_CASE("blackwell comparison") {
    const auto a = Experiment::make(0.7, 0.3);
    CHECK(blackwell_compare(a, a) == Informativeness::Equivalent);
    CHECK(blackwell_compare(Experiment::make(0.9, 0.1), Experiment::make(0.8, 0.2)) == Informativeness::More);
    CHECK(blackwell_compare(Experiment::make(0.8, 0.2), Experiment::make(0.9, 0.1)) == Informativeness::Less);
    CHECK(blackwell_compare(Experiment::make(0.9, 0.5), Experiment::make(0.5, 0.1)) ==
          Informativeness::Incomparable);
    CHECK(blackwell_compare(a, Experiment::uninformative()) == Informativeness::More);
    CHECK(blackwell_compare(Experiment::uninformative(), Experiment::uninformative()) ==
          Informativeness::Equivalent);
    CHECK(blackwell_compare(Experiment::make(1.0, 0.0), a) == Informativeness::More);

    std::mt19937_64 rng(5);
    int chains = 0;
    for (int i = 0; i < 20000; ++i) {
        const auto x = oracle::random_interior(rng);
        const auto y = oracle::random_interior(rng);
        const auto z = oracle::random_interior(rng);
        const auto xy = blackwell_compare(x, y);
        const auto yx = blackwell_compare(y, x);
        CHECK((xy == Informativeness::More) == (yx == Informativeness::Less));
        const auto yz = blackwell_compare(y, z);
        const bool up = xy == Informativeness::More || xy == Informativeness::Equivalent;
        const bool up2 = yz == Informativeness::More || yz == Informativeness::Equivalent;
        if (up && up2) {
            ++chains;
            const auto xz = blackwell_compare(x, z);
            CHECK((xz == Informativeness::More || xz == Informativeness::Equivalent));
        }
    }
    CHECK(chains > 100);
}

TEST_CASE("config validation") {
    auto ok = validate_config(two_types());
    REQUIRE(ok.ok());
    CHECK(ok.config->mu0 == doctest::Approx(0.4));

    auto raw = two_types();
    raw.types = {{0.5, 0.5}, {0.3, 0.5}};
    CHECK(has_error(validate_config(raw), "types not strictly increasing"));

    raw = two_types();
    raw.beta_bar = 0.4;
    CHECK(has_error(validate_config(raw), "mu_N must be below beta_bar"));

    raw = two_types();
    raw.types[1].prob = 0.4;
    CHECK(has_error(validate_config(raw), "type probabilities must sum to 1"));

    raw = two_types();
    raw.cost = LlrCost{0.0, -1.0};
    raw.types = {{0.5, 0.5}, {0.3, 0.4}};
    const auto many = validate_config(raw);
    CHECK_FALSE(many.ok());
    CHECK(many.errors.size() >= 4);

    raw = two_types();
    raw.cost = ShannonCost{std::numeric_limits<double>::infinity()};
    CHECK_FALSE(validate_config(raw).ok());
    CHECK_THROWS_AS(make_config(raw), std::invalid_argument);
}

TEST_CASE("belief state") {
    const auto cfg = make_config(two_types());
    const double w[] = {1.0, 3.0};
    const auto b = belief_state(cfg, w, Experiment::make(0.8, 0.2));
    CHECK(b.type_weights[0] == doctest::Approx(0.25));
    CHECK(b.interim == doctest::Approx(0.45));
    CHECK(b.posterior_g == doctest::Approx(posterior(0.45, 0.8, 0.2, Outcome::Good)));
    const auto u = belief_state(cfg, w, Experiment::uninformative());
    CHECK(u.posterior_g == u.interim);
}
