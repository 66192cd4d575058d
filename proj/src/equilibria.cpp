#include "persuasion/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "persuasion/benchmark.hpp"
#include "persuasion/costs.hpp"
#include "persuasion/numerics.hpp"

namespace persuasion {

namespace {

constexpr double kPLo = 1e-10;
constexpr double kScanPoints = 200;

double payoff(double p, double q, double mu, const CostModel& m) { return sender_payoff(p, q, mu, m); }

}  // namespace

CrossingReport require_regime(const GameConfig& cfg, Regime want) {
    if (!cfg.is_llr()) {
        throw RegimeError(std::string("regime mismatch: ") + to_string(want) +
                          " solvers need the LLR cost model; the Shannon model has no single-crossing boundary");
    }
    const auto& c = cfg.llr();
    auto rep = crossing_regime(c.c_good, c.c_bad);
    if (rep.regime != want) {
        std::ostringstream os;
        os.precision(17);
        os << "regime mismatch: operation requires " << to_string(want) << " but C_g = " << c.c_good
           << (rep.regime == Regime::TripleCrossing ? " > " : " <= ") << "K_hat(C_b) = " << rep.k_hat
           << " (C_b = " << c.c_bad << ")";
        throw RegimeError(os.str());
    }
    return rep;
}

Experiment pooling_experiment(double q, const CrossingReport& report) { return Experiment::make(p_hat(q, report), q); }

double p2(double mu, double q, const GameConfig& cfg) {
    const auto rep = require_regime(cfg, Regime::TripleCrossing);
    const double qbar = q_ratio(cfg.mu_high(), cfg.beta_bar);
    const double ph = p_hat(q, rep);
    const double level = payoff(ph, q, mu, cfg.cost);
    auto gap = [&](double p) { return payoff(p, qbar * p, mu, cfg.cost) - level; };
    const auto top = numerics::golden_section_max(gap, kPLo, 1.0 - kPLo);
    if (top.value < 0.0) {
        std::ostringstream os;
        os << "no intersection: the indifference level at q = " << q << " is not attained on q = Q(mu_N) p";
        throw NoIntersection(os.str());
    }
    // Payoff is -inf at p = 1, so the right branch always brackets.
    return numerics::bisect(gap, top.x, 1.0, 0.0);
}

double q_hat(const GameConfig& cfg) {
    const auto rep = require_regime(cfg, Regime::TripleCrossing);
    if (cfg.size() < 2) return 0.0;
    const double t_hat = *rep.t_hat;
    const double qbar = q_ratio(cfg.mu_high(), cfg.beta_bar);
    const double q_top = (qbar - t_hat) / (1.0 - t_hat);
    if (!(q_top > 0.0)) return 1.0;

    auto d = [&](double q) { return p2(cfg.mu_high(), q, cfg) - p2(cfg.mu_low(), q, cfg); };
    double prev_q = 0.0;
    double prev_d = 0.0;
    bool any_pos = false;
    bool any_neg = false;
    for (int k = 1; k <= kScanPoints; ++k) {
        const double q = q_top * k / kScanPoints;
        const double dk = d(q);
        if (dk > 0.0) any_pos = true;
        if (dk < 0.0) any_neg = true;
        if (k > 1 && prev_d > 0.0 && dk <= 0.0) return numerics::bisect(d, prev_q, q);
        prev_q = q;
        prev_d = dk;
    }
    if (!any_pos) return 0.0;
    if (!any_neg) return 1.0;
    // Only a - to + change was seen; the bound sits at the top of the scan.
    return 1.0;
}

PoolingSet pooling_set(const GameConfig& cfg) {
    const auto rep = require_regime(cfg, Regime::TripleCrossing);
    PoolingSet s;
    s.t_hat = *rep.t_hat;
    const double q0 = q_ratio(cfg.mu0, cfg.beta_bar);
    s.obedience_bound = (q0 - s.t_hat) / (1.0 - s.t_hat);

    const double v1 = benchmark_value(cfg.mu_low(), cfg.mu_low(), cfg);
    if (v1 <= 0.0) {
        s.participation_bound = 0.0;
    } else {
        auto g = [&](double q) { return payoff(p_hat(q, rep), q, cfg.mu_low(), cfg.cost) - v1; };
        const double lo = 1e-12;
        const double hi = 1.0 - 1e-12;
        if (g(hi) < 0.0) {
            s.participation_bound = 1.0;
        } else if (g(lo) >= 0.0) {
            s.participation_bound = 0.0;
        } else {
            s.participation_bound = numerics::bisect(g, lo, hi);
        }
    }
    s.large_dev_bound = q_hat(cfg);
    s.q_lo = std::max(s.participation_bound, s.large_dev_bound);
    s.q_hi = s.obedience_bound;
    return s;
}

SeparatingOutcome separating(const GameConfig& cfg) {
    require_regime(cfg, Regime::SingleCrossing);
    SeparatingOutcome out;
    out.types.resize(cfg.size());

    for (std::size_t th = 0; th < cfg.size(); ++th) {
        const double mu = cfg.mu(th);
        const auto bench = solve_benchmark(mu, mu, cfg);
        auto& slot = out.types[th];
        if (!(bench.value > 0.0)) continue;  // uninformative, payoff 0
        if (th == 0) {
            slot.experiment = bench.experiment;
            slot.payoff = bench.value;
            continue;
        }
        const double r = q_ratio(mu, cfg.beta_bar);
        const double lower_mu = cfg.mu(th - 1);
        const double lower_v = out.types[th - 1].payoff;
        auto h = [&](double p) { return payoff(p, r * p, lower_mu, cfg.cost) - lower_v; };
        const double p_sym = *bench.p_sym;
        if (h(p_sym) <= 0.0) {
            slot.experiment = bench.experiment;
            slot.payoff = bench.value;
            continue;
        }
        // Binding: move up to the larger root of the lower type's constraint.
        const auto peak = numerics::golden_section_max(h, kPLo, 1.0 - kPLo);
        // Keep the side where the lower type's constraint holds, unless that
        // is p = 1 itself (infinite cost): the root then sits inside the last
        // ulp below 1.
        const auto b = numerics::bisect_bracket(h, std::max(peak.x, p_sym), 1.0, 0.0);
        const double p = b.hi < 1.0 ? b.hi : b.lo;
        slot.experiment = Experiment::make(p, r * p);
        slot.payoff = payoff(p, r * p, mu, cfg.cost);
        slot.binding = true;
    }
    return out;
}

double sigma_good(double p, double c_good) {
    if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("sigma_good: p must lie in (0, 1]");
    // f((p, s p), 1) = p - C_g KL(p || s p), increasing in s.
    auto g = [&](double s) { return p - c_good * kl_bernoulli(p, s * p); };
    const double s = numerics::bisect(g, std::numeric_limits<double>::min(), 1.0, 0.0);
    return s * p;
}

double sigma_bad(double p, double c_bad) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("sigma_bad: p must lie in (0, 1)");
    // f((p, s p), 0) = s p - C_b KL(s p || p), increasing in s.
    auto g = [&](double s) { return s * p - c_bad * kl_bernoulli(s * p, p); };
    const double s = numerics::bisect(g, 0.0, 1.0, 0.0);
    return s * p;
}

UninformativeReport uninformative_report(const GameConfig& cfg) {
    const auto& c = cfg.llr();
    UninformativeReport rep;
    auto gap = [&](double p) { return sigma_good(p, c.c_good) - sigma_bad(p, c.c_bad); };
    const double p_star = numerics::bisect(gap, 1e-4, 1.0 - 1e-9, 0.0);
    const double q_star = sigma_good(p_star, c.c_good);
    rep.pi_star = Experiment::make(p_star, q_star);
    rep.mu_bar = q_ratio_inv(q_star / p_star, cfg.beta_bar);
    rep.no_guarantee = feasibility(cfg.cost, cfg.mu_low(), cfg.mu_low(), cfg.beta_bar) <= 0.0;
    rep.exists = rep.no_guarantee && cfg.mu_high() <= rep.mu_bar;
    return rep;
}

std::vector<BlackwellEntry> compare_blackwell(const SeparatingOutcome& outcome, const GameConfig& cfg) {
    std::vector<BlackwellEntry> out;
    for (std::size_t th = 0; th < outcome.types.size(); ++th) {
        BlackwellEntry e;
        e.theta = th;
        e.outcome = outcome.types[th].experiment;
        e.benchmark = solve_benchmark(cfg.mu(th), cfg.mu(th), cfg).experiment;
        e.order = blackwell_compare(e.outcome, e.benchmark, kBlackwellTol);
        out.push_back(e);
    }
    return out;
}

BlackwellEntry compare_blackwell(const PoolingSet& set, const GameConfig& cfg) {
    if (!(set.q_hi > 0.0)) throw std::invalid_argument("compare_blackwell: pooling set has no top experiment");
    const auto rep = require_regime(cfg, Regime::TripleCrossing);
    BlackwellEntry e;
    e.theta = cfg.size();
    e.outcome = pooling_experiment(set.q_hi, rep);
    e.benchmark = solve_benchmark(cfg.mu0, cfg.mu0, cfg).experiment;
    e.order = blackwell_compare(e.outcome, e.benchmark, kBlackwellTol);
    return e;
}

}  // namespace persuasion
