// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero unless the
// failing criteria are exactly those passed with --xfail (none by default).
// Seeds, sample counts, tolerances and time limits are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "persuasion/benchmark.hpp"
#include "persuasion/costs.hpp"
#include "persuasion/crossing.hpp"
#include "persuasion/equilibria.hpp"
#include "persuasion/verifier.hpp"
#include "persuasion/wald.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

using namespace persuasion;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Verdict {
    bool pass = true;
    std::string detail;
};

// Collects failures; keeps the first few messages.
struct Tally {
    int checks = 0;
    int failures = 0;
    std::string first;

    void check(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        if (++failures <= 3) first += (first.empty() ? "" : "; ") + what;
    }
    Verdict done(const std::string& summary) const {
        std::ostringstream os;
        os << summary << ", " << checks - failures << "/" << checks << " checks";
        if (failures) os << " [" << first << "]";
        return {failures == 0, os.str()};
    }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

GameConfig config(CostModel cost, double beta_bar, std::vector<SenderType> types) {
    RawConfig raw;
    raw.cost = cost;
    raw.beta_bar = beta_bar;
    raw.types = std::move(types);
    return make_config(raw);
}

StrategyProfile pooled(const GameConfig& cfg, const Experiment& e) {
    StrategyProfile prof;
    prof.assignment.assign(cfg.size(), e);
    return prof;
}

GridSpec grid(int n) {
    GridSpec g;
    g.n_p = g.n_q = n;
    return g;
}

// --- 1 ----------------------------------------------------------------------

Verdict cost_forms() {
    constexpr double kTol = 1e-10;
    std::mt19937_64 rng(kSeed + 1);
    Tally t;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto pi = oracle::random_interior(rng);
        const double mu = oracle::uniform(rng, 0.01, 0.99);
        const CostModel m = LlrCost{oracle::uniform(rng, 0.05, 20), oracle::uniform(rng, 0.05, 20)};
        const double err = std::abs(cost(pi, mu, m) - oracle::cost_posterior_form(pi, mu, m));
        worst = std::max(worst, err);
        t.check(err <= kTol, fmt("err %.3g at p=%.6g", err, pi.p()));
    }
    return t.done(fmt("max |KL - posterior form| = %.3g", worst));
}

// --- 2 ----------------------------------------------------------------------

Verdict crossing_signs() {
    constexpr double kH = 1e-6;
    constexpr double kBand = 1e-6;
    std::mt19937_64 rng(kSeed + 2);
    Tally t;
    int exempt = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto pi = oracle::random_interior(rng, 0.01);
        const double cg = oracle::uniform(rng, 0.1, 10);
        const double cb = oracle::uniform(rng, 0.1, 10);
        const double mu = oracle::uniform(rng, 0.05, 0.95);
        const CostModel m = LlrCost{cg, cb};
        const double d = mrs(pi, mu + kH, m) - mrs(pi, mu - kH, m);
        const int fd = d > 0 ? 1 : (d < 0 ? -1 : 0);
        if (fd == mrs_mu_sign(pi.p(), pi.q(), cg, cb)) {
            t.check(true, "");
        } else if (std::abs(delta(t_of(pi.p(), pi.q()), cg, cb)) < kBand) {
            ++exempt;
        } else {
            t.check(false, fmt("sign mismatch at p=%.6g q=%.6g", pi.p(), pi.q()));
        }
    }
    return t.done("exempt near delta = 0: " + std::to_string(exempt));
}

// --- 3 ----------------------------------------------------------------------

Verdict k_hat_certificate() {
    constexpr double kRootTol = 1e-8;
    constexpr double kRef = 2.1550;
    constexpr double kRefTol = 1e-3;
    Tally t;
    std::vector<double> k;
    double worst = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double cb = 0.1 * i;
        const double kh = k_hat(cb);
        k.push_back(kh);
        const double r = std::abs(delta(t_star(kh, cb), kh, cb));
        worst = std::max(worst, r);
        t.check(r <= kRootTol, fmt("delta(t*) = %.3g at C_b = %.2g", r, cb));
        t.check(kh > cb, fmt("K_hat <= C_b at C_b = %.2g", cb));
    }
    for (std::size_t i = 1; i < k.size(); ++i) t.check(k[i] - k[i - 1] > 0.0, fmt("first difference at %g", i * 0.1));
    for (std::size_t i = 2; i < k.size(); ++i) {
        t.check(k[i] - 2 * k[i - 1] + k[i - 2] < 0.0, fmt("second difference at %g", i * 0.1));
    }
    const double k1 = k_hat(1.0);
    t.check(std::abs(k1 - kRef) <= kRefTol, fmt("K_hat(1) = %.6g", k1));
    return t.done(fmt("K_hat(1) = %.6f, max |delta(t*)| = %.3g", k1, worst));
}

// --- 4 ----------------------------------------------------------------------

Verdict benchmark_oracle() {
    constexpr double kTol = 1e-5;
    std::mt19937_64 rng(kSeed + 4);
    Tally t;
    int positive = 0;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double bb = oracle::uniform(rng, 0.3, 0.9);
        const double beta = oracle::uniform(rng, 0.05, bb - 0.01);
        const double mu = oracle::uniform(rng, 0.05, 0.95);
        CostModel m = LlrCost{oracle::uniform(rng, 0.05, 5), oracle::uniform(rng, 0.05, 5)};
        if (i % 4 == 3) m = ShannonCost{oracle::uniform(rng, 0.05, 3)};
        const auto sol = solve_benchmark(mu, beta, m, bb);
        const auto g = oracle::grid_benchmark(mu, beta, m, bb);
        const double err = std::abs(sol.value - g.value);
        worst = std::max(worst, err);
        t.check(err <= kTol, fmt("value gap %.3g vs grid", err));
        t.check((sol.value > 0.0) == (sol.feasibility > 0.0), fmt("positivity vs feasibility %.3g", sol.feasibility));
        positive += sol.value > 0.0;
    }
    return t.done(fmt("max |V - grid| = %.3g, positive %g/200", worst, positive));
}

// --- 5 ----------------------------------------------------------------------

constexpr int kVerifyGrid = 201;
constexpr int kOutsideMaxGrid = 1601;

// Smallest dyadic refinement of 201 at which the profile fails, or 0.
int failing_grid(const StrategyProfile& prof, const GameConfig& cfg, ViolationKind& kind) {
    for (int n = kVerifyGrid; n <= kOutsideMaxGrid; n = 2 * (n - 1) + 1) {
        const auto r = verify_d1(prof, cfg, grid(n));
        if (!r.ok()) {
            kind = r.violations.front().kind;
            return n;
        }
    }
    return 0;
}

Verdict pooling_certification(const std::vector<GameConfig>& configs) {
    Tally t;
    int refined = 0;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        const auto& cfg = configs[c];
        const auto rep = crossing_regime(cfg.llr().c_good, cfg.llr().c_bad);
        const auto s = pooling_set(cfg);
        t.check(s.nonempty(), "empty pooling set");
        if (!s.nonempty()) continue;

        for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double q = s.q_lo + frac * (s.q_hi - s.q_lo);
            const auto r = verify_d1(pooled(cfg, pooling_experiment(q, rep)), cfg, grid(kVerifyGrid));
            t.check(r.ok(), "config " + std::to_string(c) + fmt(" inside q=%.6g: %g violations", q, r.violations.size()));
        }

        const double q_mid = 0.5 * (s.q_lo + s.q_hi);
        const double p_mid = p_hat(q_mid, rep);
        std::vector<std::pair<std::string, Experiment>> outside{
            {"above", pooling_experiment(s.q_hi + 0.25 * (1 - s.q_hi), rep)},
            {"far above", pooling_experiment(s.q_hi + 0.5 * (1 - s.q_hi), rep)},
            {"p_hat+0.05", Experiment::make(std::min(p_mid + 0.05, 1 - 1e-9), q_mid)},
            // Halfway to the diagonal when p_hat is within 0.1 of q, so the point stays informative.
            {"p_hat-0.05", Experiment::make(std::max(p_mid - 0.05, 0.5 * (p_mid + q_mid)), q_mid)},
        };
        if (s.q_lo > 0.0) {
            outside.push_back({"below", pooling_experiment(0.5 * s.q_lo, rep)});
        } else {
            outside.push_back({"p_hat+0.10", Experiment::make(std::min(p_mid + 0.10, 1 - 1e-9), q_mid)});
        }
        for (const auto& [name, e] : outside) {
            ViolationKind kind{};
            const int n = failing_grid(pooled(cfg, e), cfg, kind);
            refined += n > kVerifyGrid;
            t.check(n > 0, "config " + std::to_string(c) + " " + name + " passed up to 1601");
        }
    }
    return t.done(std::to_string(configs.size()) + " configs, outside points needing a finer grid: " +
                  std::to_string(refined));
}

// --- 6 ----------------------------------------------------------------------

Verdict separating_certification(const std::vector<GameConfig>& configs) {
    constexpr double kBindTol = 1e-8;
    constexpr double kSingleTol = 1e-8;
    Tally t;
    double worst = 0.0;
    int binding = 0;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        const auto& cfg = configs[c];
        const auto out = separating(cfg);
        StrategyProfile prof;
        for (const auto& ty : out.types) prof.assignment.push_back(ty.experiment);
        const auto r = verify_d1(prof, cfg, grid(kVerifyGrid));
        t.check(r.ok(), "config " + std::to_string(c) + fmt(": %g violations", r.violations.size()));
        for (std::size_t th = 1; th < cfg.size(); ++th) {
            if (!out.types[th].binding) continue;
            ++binding;
            const double gap =
                std::abs(sender_payoff(out.types[th].experiment, cfg.mu(th - 1), cfg.cost) - out.types[th - 1].payoff);
            worst = std::max(worst, gap);
            t.check(gap < kBindTol, "config " + std::to_string(c) + fmt(" binding gap %.3g", gap));
        }
    }
    std::mt19937_64 rng(kSeed + 6);
    for (int i = 0; i < 20; ++i) {
        const auto cfg = instances::single_crossing(rng, 1);
        const auto e = separating(cfg).types[0].experiment;
        const auto b = solve_benchmark(cfg.mu(0), cfg.mu(0), cfg).experiment;
        t.check(std::abs(e.p() - b.p()) < kSingleTol && std::abs(e.q() - b.q()) < kSingleTol, "N = 1 differs");
    }
    return t.done(fmt("binding constraints %g, max gap %.3g", binding, worst));
}

// --- 7 ----------------------------------------------------------------------

Verdict wald_validation() {
    constexpr double kSe = 3.0;
    constexpr double kIdentityTol = 1e-10;
    Tally t;
    double worst_z = 0.0;
    for (double alpha : {0.55, 0.6, 0.75}) {
        for (auto [nb, nl] : std::vector<std::pair<int, int>>{{2, -2}, {4, -4}, {3, -1}}) {
            WaldConfig w;
            w.alpha = alpha;
            w.c_g = 1.0;
            w.c_b = 2.0;
            w.n_bar = nb;
            w.n_low = nl;
            w.mu0 = 0.4;
            w.seed = kSeed;
            w.n_paths = 1'000'000;
            const auto s = simulate(w);
            const double cf = closed_form_cost(w);
            const auto e = thresholds_to_experiment(alpha, nb, nl);
            const double se_p = std::sqrt(e.p() * (1 - e.p()) / static_cast<double>(s.paths_good));
            const double se_q = std::sqrt(e.q() * (1 - e.q()) / static_cast<double>(s.paths_bad));
            const double z_cost = std::abs(s.mean_cost - cf) / s.se_cost;
            const double z_p = std::abs(s.p_emp - e.p()) / se_p;
            const double z_q = std::abs(s.q_emp - e.q()) / se_q;
            worst_z = std::max({worst_z, z_cost, z_p, z_q});
            const std::string where = fmt("alpha %.2f (%g,", alpha, nb) + std::to_string(nl) + ")";
            t.check(z_cost <= kSe, where + fmt(" cost z = %.2f", z_cost));
            t.check(z_p <= kSe, where + fmt(" p z = %.2f", z_p));
            t.check(z_q <= kSe, where + fmt(" q z = %.2f", z_q));
            t.check(s.cap_hits == 0, where + " cap hits");
            const double mapped = cost(e, w.mu0, map_to_llr_constants(alpha, w.c_g, w.c_b));
            t.check(std::abs(mapped - cf) <= kIdentityTol, where + fmt(" identity gap %.3g", std::abs(mapped - cf)));
        }
    }
    return t.done(fmt("max z = %.2f", worst_z));
}

// --- 8 ----------------------------------------------------------------------

Verdict blackwell(const std::vector<GameConfig>& pooling, const std::vector<GameConfig>& separating_cfgs) {
    Tally t;
    for (const auto& cfg : pooling) {
        const auto s = pooling_set(cfg);
        if (!s.nonempty()) continue;
        const auto e = compare_blackwell(s, cfg);
        t.check(e.order == Informativeness::Less, std::string("pooling top is ") + to_string(e.order));
    }
    for (const auto& cfg : separating_cfgs) {
        for (const auto& e : compare_blackwell(separating(cfg), cfg)) {
            t.check(e.order == Informativeness::More || e.order == Informativeness::Equivalent,
                    std::string("separating type is ") + to_string(e.order));
        }
    }
    return t.done("counterexamples " + std::to_string(t.failures));
}

// --- 9 ----------------------------------------------------------------------

Verdict shannon_crossing() {
    std::mt19937_64 rng(kSeed + 9);
    Tally t;
    for (int i = 0; i < 500; ++i) {
        const double q = oracle::uniform(rng, 0.02, 0.95);
        const double c = oracle::uniform(rng, 0.05, 5);
        const double lo = oracle::uniform(rng, 0.001, 0.2);
        const double hi = oracle::uniform(rng, 0.8, 0.999);
        std::vector<double> mus(101);
        for (int k = 0; k <= 100; ++k) mus[k] = lo + (hi - lo) * k / 100.0;
        const CostModel m = ShannonCost{c};
        const double pt = shannon_p_tilde(q, c);

        auto signs = [&](double p) {
            std::vector<int> s;
            for (int k = 1; k <= 100; ++k) {
                const double d = mrs(p, q, mus[k], m) - mrs(p, q, mus[k - 1], m);
                s.push_back(d > 0 ? 1 : (d < 0 ? -1 : 0));
            }
            return s;
        };
        const double p_in = oracle::uniform(rng, q, pt);
        const auto below = signs(p_in == q ? pt : p_in);
        t.check(std::all_of(below.begin(), below.end(), [](int s) { return s < 0; }),
                fmt("not decreasing at q=%.4g C=%.4g p=%.6g", q, c, p_in));

        const double p_out = oracle::uniform(rng, pt, 1.0);
        if (p_out > pt && p_out < 1.0) {
            const auto above = signs(p_out);
            int changes = 0;
            bool up_to_down = true;
            for (std::size_t k = 1; k < above.size(); ++k) {
                if (above[k] != above[k - 1]) {
                    ++changes;
                    up_to_down = up_to_down && above[k - 1] > 0 && above[k] < 0;
                }
            }
            t.check(changes <= 1 && up_to_down, fmt("not single-peaked at q=%.4g C=%.4g p=%.6g", q, c, p_out));
        }

        const std::size_t a = instances::draw_count(rng, 0, 99);
        const std::size_t b = instances::draw_count(rng, a + 1, 100);
        t.check(shannon_p_tilde_pair(q, c, mus[a], mus[b]) > pt, fmt("pair locus below p_tilde at q=%.4g", q));
    }
    return t.done("500 draws");
}

// --- 10 ---------------------------------------------------------------------

Verdict uninformative() {
    constexpr double kTol = 1e-9;
    constexpr double kMargin = 0.02;
    std::mt19937_64 rng(kSeed + 10);
    Tally t;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double cb = std::exp(oracle::uniform(rng, std::log(0.2), std::log(5.0)));
        const double cg = k_hat(cb) * oracle::uniform(rng, 1.05, 4.0);
        const auto cfg = config(LlrCost{cg, cb}, 0.7, {{0.1, 0.5}, {0.3, 0.5}});
        const auto u = uninformative_report(cfg).pi_star;
        const double f0 = u.q() - cb * kl_bernoulli(u.q(), u.p());
        const double f1 = u.p() - cg * kl_bernoulli(u.p(), u.q());
        worst = std::max({worst, std::abs(f0), std::abs(f1)});
        t.check(std::abs(f0) <= kTol && std::abs(f1) <= kTol, fmt("f(pi*, 0) = %.3g, f(pi*, 1) = %.3g", f0, f1));
    }

    int constructed = 0;
    StrategyProfile silent;
    silent.assignment.assign(2, Experiment::uninformative());
    while (constructed < 10) {
        const double cb = std::exp(oracle::uniform(rng, std::log(0.3), std::log(3.0)));
        const double cg = 1.2 * k_hat(cb);
        const double bb = oracle::uniform(rng, 0.6, 0.85);
        const double mu_bar = uninformative_report(config(LlrCost{cg, cb}, bb, {{0.01, 1.0}})).mu_bar;
        double mu1 = 0.01;
        if (!(mu_bar - kMargin > mu1 && mu_bar + kMargin < bb)) continue;
        if (feasibility(cg, cb, mu1, mu1, bb) > 0.0) continue;
        ++constructed;

        const auto yes = config(LlrCost{cg, cb}, bb, {{mu1, 0.5}, {mu_bar - kMargin, 0.5}});
        t.check(uninformative_report(yes).exists, "report says no equilibrium below mu_bar");
        const auto ry = verify_d1(silent, yes, grid(kVerifyGrid));
        t.check(ry.ok(), fmt("mu_N <= mu_bar: %g violations", ry.violations.size()));

        const auto no = config(LlrCost{cg, cb}, bb, {{mu1, 0.5}, {mu_bar + kMargin, 0.5}});
        const auto rn = verify_d1(silent, no, grid(kVerifyGrid));
        const bool large_dev = std::any_of(rn.violations.begin(), rn.violations.end(), [](const Violation& v) {
            return v.kind == ViolationKind::OffPathDeviation || v.kind == ViolationKind::D1Belief;
        });
        t.check(large_dev, "mu_N > mu_bar: no deviation witness");
    }
    return t.done(fmt("max |f| at pi* = %.3g", worst));
}

// --- 11 ---------------------------------------------------------------------

Verdict costless_limit(const std::vector<GameConfig>& configs) {
    Tally t;
    for (const auto& [eps, floor] : std::vector<std::pair<double, double>>{{1e-2, 0.9}, {1e-3, 0.99}}) {
        double lowest = 1.0;
        for (const auto& base : configs) {
            const auto& c = base.llr();
            RawConfig raw;
            raw.cost = LlrCost{eps * c.c_good, eps * c.c_bad};
            raw.beta_bar = base.beta_bar;
            raw.types = base.types;
            const auto cfg = make_config(raw);
            t.check(crossing_regime(eps * c.c_good, eps * c.c_bad).regime == Regime::SingleCrossing,
                    "scaled config left SingleCrossing");
            const auto out = separating(cfg);
            for (std::size_t th = 0; th < cfg.size(); ++th) {
                const auto& e = out.types[th].experiment;
                lowest = std::min(lowest, e.p());
                t.check(e.p() > floor, fmt("eps %.0e: p = %.6g", eps, e.p()));
                t.check(e.q() == q_ratio(cfg.mu(th), cfg.beta_bar) * e.p(), fmt("eps %.0e: q off the obedience line", eps));
            }
        }
        std::printf("      eps = %.0e: min p = %.6f\n", eps, lowest);
    }
    return t.done(std::to_string(configs.size()) + " configs");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> xfail;
    app.add_option("--xfail", xfail, "criteria known to fail");
    CLI11_PARSE(app, argc, argv);

    std::mt19937_64 rng(kSeed);
    std::vector<GameConfig> pooling_cfgs, separating_cfgs;
    for (int i = 0; i < 20; ++i) pooling_cfgs.push_back(instances::pooling_instance(rng));
    for (int i = 0; i < 20; ++i) separating_cfgs.push_back(instances::single_crossing(rng, instances::draw_count(rng, 2, 4)));

    struct Criterion {
        int id;
        const char* name;
        double limit_s;  ///< 0 = no time limit
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "cost-form equivalence", 1.0, cost_forms},
        {2, "crossing classifier vs finite differences", 5.0, crossing_signs},
        {3, "K_hat certificate", 1.0, k_hat_certificate},
        {4, "benchmark vs grid search", 30.0, benchmark_oracle},
        {5, "pooling certification", 180.0, [&] { return pooling_certification(pooling_cfgs); }},
        {6, "separating certification", 120.0, [&] { return separating_certification(separating_cfgs); }},
        {7, "Wald validation", 60.0, wald_validation},
        {8, "Blackwell comparisons", 0.0, [&] { return blackwell(pooling_cfgs, separating_cfgs); }},
        {9, "Shannon crossing", 0.0, shannon_crossing},
        {10, "uninformative equilibrium", 0.0, uninformative},
        {11, "costless limit", 0.0, [&] { return costless_limit(separating_cfgs); }},
    };

    int failed = 0;
    std::set<int> failing;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.limit_s == 0.0 || secs < c.limit_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        if (!pass) failing.insert(c.id);
        std::printf("%s %2d %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                    in_time ? "" : ", over time limit");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    const std::set<int> expected(xfail.begin(), xfail.end());
    if (!expected.empty()) {
        std::printf("expected failures:");
        for (int id : expected) std::printf(" %d", id);
        std::printf(" -> %s\n", failing == expected ? "as expected" : "MISMATCH");
    }
    return failing == expected ? 0 : 1;
}
