#include "persuasion/game_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace persuasion {

Experiment Experiment::make(double p, double q) {
    if (!(q >= 0.0 && p <= 1.0 && q <= p)) {
        std::ostringstream os;
        os << "invalid experiment (p=" << p << ", q=" << q << "): need 0 <= q <= p <= 1";
        throw std::invalid_argument(os.str());
    }
    if (p == q) return uninformative();
    return Experiment(p, q, false);
}

const LlrCost& GameConfig::llr() const {
    if (const auto* c = std::get_if<LlrCost>(&cost)) return *c;
    throw std::logic_error("operation requires the LLR cost model");
}

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

ConfigValidation validate_config(const RawConfig& raw) {
    ConfigValidation out;
    auto fail = [&](std::string field, std::string msg) {
        out.errors.push_back({std::move(field), std::move(msg)});
    };

    if (const auto* c = std::get_if<LlrCost>(&raw.cost)) {
        if (!positive_finite(c->c_good)) fail("cost.C_g", "C_g must be positive and finite");
        if (!positive_finite(c->c_bad)) fail("cost.C_b", "C_b must be positive and finite");
    } else {
        const auto& s = std::get<ShannonCost>(raw.cost);
        if (!positive_finite(s.c)) fail("cost.C", "C must be positive and finite");
    }

    const bool beta_ok = std::isfinite(raw.beta_bar) && raw.beta_bar > 0.0 && raw.beta_bar < 1.0;
    if (!beta_ok) fail("beta_bar", "beta_bar must lie in (0, 1)");

    if (raw.types.empty()) {
        fail("types", "at least one type is required");
    } else {
        double total = 0.0;
        bool mu_range_ok = true;
        for (std::size_t i = 0; i < raw.types.size(); ++i) {
            const auto& t = raw.types[i];
            const std::string where = "types[" + std::to_string(i) + "]";
            if (!(t.mu > 0.0 && t.mu < 1.0)) {
                fail(where + ".mu", "mu must lie in (0, 1)");
                mu_range_ok = false;
            }
            if (!(t.prob > 0.0 && t.prob <= 1.0)) fail(where + ".prob", "prob must lie in (0, 1]");
            total += t.prob;
        }
        for (std::size_t i = 1; i < raw.types.size(); ++i) {
            if (!(raw.types[i - 1].mu < raw.types[i].mu)) {
                fail("types.mu", "types not strictly increasing");
                break;
            }
        }
        if (!(std::abs(total - 1.0) <= 1e-12)) fail("types.prob", "type probabilities must sum to 1");
        if (beta_ok && mu_range_ok && !(raw.types.back().mu < raw.beta_bar)) {
            fail("beta_bar", "mu_N must be below beta_bar");
        }
    }

    if (!out.errors.empty()) return out;

    GameConfig cfg;
    cfg.cost = raw.cost;
    cfg.beta_bar = raw.beta_bar;
    cfg.types = raw.types;
    double mu0 = 0.0;
    for (const auto& t : raw.types) mu0 += t.prob * t.mu;
    // Rounding in the weighted sum can step outside the hull by an ulp.
    cfg.mu0 = std::clamp(mu0, cfg.mu_low(), cfg.mu_high());
    out.config = std::move(cfg);
    return out;
}

GameConfig make_config(const RawConfig& raw) {
    auto v = validate_config(raw);
    if (v.ok()) return *std::move(v.config);
    std::string msg = "invalid config:";
    for (const auto& e : v.errors) msg += " [" + e.field + "] " + e.message + ";";
    throw std::invalid_argument(msg);
}

BeliefState belief_state(const GameConfig& cfg, std::span<const double> weights, const Experiment& pi) {
    if (weights.size() != cfg.size()) throw std::invalid_argument("belief_state: weight count mismatch");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("belief_state: negative weight");
        total += w;
    }
    if (!(total > 0.0)) throw std::invalid_argument("belief_state: weights sum to zero");

    BeliefState b;
    b.type_weights.reserve(weights.size());
    double interim = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double g = weights[i] / total;
        b.type_weights.push_back(g);
        interim += g * cfg.mu(i);
    }
    b.interim = interim;
    // A zero-probability outcome leaves the belief where it was.
    auto safe_posterior = [&](Outcome s) {
        const double lg = s == Outcome::Good ? pi.p() : 1.0 - pi.p();
        const double lb = s == Outcome::Good ? pi.q() : 1.0 - pi.q();
        if (pi.is_uninformative() || interim * lg + (1.0 - interim) * lb <= 0.0) return interim;
        return posterior(interim, pi, s);
    };
    b.posterior_g = safe_posterior(Outcome::Good);
    b.posterior_b = safe_posterior(Outcome::Bad);
    return b;
}

double q_ratio(double beta, double beta_bar) {
    if (!(beta > 0.0 && beta < 1.0) || !(beta_bar > 0.0 && beta_bar < 1.0)) {
        throw std::domain_error("q_ratio: beliefs must lie in (0, 1)");
    }
    return (beta / (1.0 - beta)) / (beta_bar / (1.0 - beta_bar));
}

double q_ratio_inv(double r, double beta_bar) {
    if (!(r > 0.0)) throw std::domain_error("q_ratio_inv: ratio must be positive");
    const double odds = r * beta_bar / (1.0 - beta_bar);
    if (std::isinf(odds)) return 1.0;
    return odds / (1.0 + odds);
}

double posterior(double beta, const Experiment& pi, Outcome s) {
    if (pi.is_uninformative()) return beta;
    return posterior(beta, pi.p(), pi.q(), s);
}

double posterior(double beta, double p, double q, Outcome s) {
    const double lg = s == Outcome::Good ? p : 1.0 - p;
    const double lb = s == Outcome::Good ? q : 1.0 - q;
    const double num = beta * lg;
    const double den = num + (1.0 - beta) * lb;
    if (!(den > 0.0)) throw std::domain_error("undefined posterior: outcome has zero probability");
    return num / den;
}

bool is_persuasive(const Experiment& pi, double beta, double beta_bar) {
    if (pi.is_uninformative()) return beta >= beta_bar;
    // posterior_g >= beta_bar, cleared of denominators.
    return beta * pi.p() * (1.0 - beta_bar) >= beta_bar * (1.0 - beta) * pi.q();
}

const char* to_string(Informativeness order) {
    switch (order) {
        case Informativeness::More: return "More";
        case Informativeness::Less: return "Less";
        case Informativeness::Equivalent: return "Equivalent";
        case Informativeness::Incomparable: return "Incomparable";
    }
    return "?";
}

namespace {

/// Three-way comparison of a1/a2 against b1/b2 with nonnegative parts.
/// 0/0 only arises for identical boundary components and compares equal.
int compare_ratio(double a1, double a2, double b1, double b2, double rel_tol) {
    const bool a_nan = a1 == 0.0 && a2 == 0.0;
    const bool b_nan = b1 == 0.0 && b2 == 0.0;
    if (a_nan || b_nan) return 0;
    const double lhs = a1 * b2;
    const double rhs = b1 * a2;
    const double band = rel_tol * std::max(std::abs(lhs), std::abs(rhs));
    if (std::abs(lhs - rhs) <= band) return 0;
    return lhs < rhs ? -1 : 1;
}

}  // namespace

Informativeness blackwell_compare(const Experiment& a, const Experiment& b, double rel_tol) {
    // Each component is a (numerator, denominator) pair; an uninformative
    // experiment has both ratios equal to 1.
    struct Ratios {
        double gn, gd, bn, bd;
    };
    auto ratios = [](const Experiment& e) {
        if (e.is_uninformative()) return Ratios{1.0, 1.0, 1.0, 1.0};
        return Ratios{e.q(), e.p(), 1.0 - e.p(), 1.0 - e.q()};
    };
    const Ratios ra = ratios(a);
    const Ratios rb = ratios(b);

    // Smaller ratios mean more informative on each component.
    const int good = compare_ratio(ra.gn, ra.gd, rb.gn, rb.gd, rel_tol);
    const int bad = compare_ratio(ra.bn, ra.bd, rb.bn, rb.bd, rel_tol);

    if (good == 0 && bad == 0) return Informativeness::Equivalent;
    if (good <= 0 && bad <= 0) return Informativeness::More;
    if (good >= 0 && bad >= 0) return Informativeness::Less;
    return Informativeness::Incomparable;
}

}  // namespace persuasion
