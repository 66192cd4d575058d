#include "persuasion/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "persuasion/costs.hpp"

namespace persuasion {

const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::Mimicry: return "Mimicry";
        case ViolationKind::OffPathDeviation: return "OffPathDeviation";
        case ViolationKind::D1Belief: return "D1Belief";
        case ViolationKind::Obedience: return "Obedience";
        case ViolationKind::BayesConsistency: return "BayesConsistency";
    }
    return "?";
}

double sender_value_given_belief(double beta, const Experiment& pi, std::size_t theta, const GameConfig& cfg) {
    if (pi.is_uninformative()) return 0.0;
    const double mu = cfg.mu(theta);
    if (is_persuasive(pi, beta, cfg.beta_bar)) return sender_payoff(pi, mu, cfg.cost);
    return -cost(pi, mu, cfg.cost);
}

std::vector<double> belief_grid(const GameConfig& cfg, int n) {
    if (cfg.size() == 1 || n < 2) return {cfg.mu_low()};
    std::vector<double> g(n);
    const double lo = cfg.mu_low();
    const double hi = cfg.mu_high();
    for (int k = 0; k < n; ++k) g[k] = lo + (hi - lo) * k / (n - 1);
    g.back() = hi;
    return g;
}

DeviationSets deviation_sets(const Experiment& pi, std::size_t theta, double v_star, const GameConfig& cfg,
                             std::span<const double> beliefs, double tol) {
    DeviationSets s;
    for (double b : beliefs) {
        const double gain = sender_value_given_belief(b, pi, theta, cfg) - v_star;
        if (gain > tol) s.d.push_back(b);
        if (gain >= -tol) s.d0.push_back(b);
    }
    return s;
}

namespace {

void check_profile_size(const StrategyProfile& profile, const GameConfig& cfg) {
    if (profile.assignment.size() != cfg.size()) {
        throw std::invalid_argument("verify_d1: profile must assign one experiment per type");
    }
}

struct OnPath {
    BeliefSystem system;
    std::vector<std::size_t> slot;  // type -> index into system.on_path
};

OnPath on_path(const StrategyProfile& profile, const GameConfig& cfg, OffPathRule rule) {
    OnPath op;
    op.system.off_path_rule = rule;
    auto& exps = op.system.on_path;
    std::vector<double> mass;
    std::vector<double> weighted;
    for (std::size_t th = 0; th < cfg.size(); ++th) {
        const auto& e = profile.assignment[th];
        auto it = std::find(exps.begin(), exps.end(), e);
        std::size_t k = static_cast<std::size_t>(it - exps.begin());
        if (it == exps.end()) {
            exps.push_back(e);
            mass.push_back(0.0);
            weighted.push_back(0.0);
        }
        mass[k] += cfg.types[th].prob;
        weighted[k] += cfg.types[th].prob * cfg.mu(th);
        op.slot.push_back(k);
    }
    for (std::size_t k = 0; k < mass.size(); ++k) op.system.beliefs.push_back(weighted[k] / mass[k]);
    return op;
}

/// On-path obedience with the verifier's slack: indifference within tol
/// resolves to the high action.
bool obeys(const Experiment& e, double beta, const GameConfig& cfg, double tol) {
    if (e.is_uninformative()) return false;
    return posterior(beta, e, Outcome::Good) >= cfg.beta_bar - tol;
}

double on_path_value(const Experiment& e, double beta, std::size_t theta, const GameConfig& cfg, double tol) {
    if (e.is_uninformative()) return 0.0;
    const double mu = cfg.mu(theta);
    return obeys(e, beta, cfg, tol) ? sender_payoff(e, mu, cfg.cost) : -cost(e, mu, cfg.cost);
}

bool strict_subset(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Off-path test of one deviation; appends violations to `out`.
void check_deviation(const Experiment& dev, const GameConfig& cfg, const std::vector<double>& v_star,
                     const std::vector<double>& beliefs, OffPathRule rule, double tol, std::vector<Violation>& out) {
    if (rule == OffPathRule::AssignLowest) {
        for (std::size_t th = 0; th < cfg.size(); ++th) {
            const double gain = sender_value_given_belief(cfg.mu_low(), dev, th, cfg) - v_star[th];
            if (gain > tol) out.push_back({ViolationKind::OffPathDeviation, th, dev, cfg.mu_low(), gain});
        }
        return;
    }
    // Same sets as deviation_sets(), with payoffs and persuasiveness computed
    // once per deviation instead of once per (type, belief).
    const std::size_t n = cfg.size();
    std::vector<char> persuades(beliefs.size());
    for (std::size_t k = 0; k < beliefs.size(); ++k) {
        persuades[k] = !dev.is_uninformative() && is_persuasive(dev, beliefs[k], cfg.beta_bar);
    }
    std::vector<DeviationSets> sets(n);
    bool any = false;
    for (std::size_t th = 0; th < n; ++th) {
        double yes = 0.0;
        double no = 0.0;
        if (!dev.is_uninformative()) {
            yes = sender_payoff(dev, cfg.mu(th), cfg.cost);
            no = -cost(dev, cfg.mu(th), cfg.cost);
        }
        for (std::size_t k = 0; k < beliefs.size(); ++k) {
            const double gain = (persuades[k] ? yes : no) - v_star[th];
            if (gain > tol) sets[th].d.push_back(beliefs[k]);
            if (gain >= -tol) sets[th].d0.push_back(beliefs[k]);
        }
        any = any || !sets[th].d.empty();
    }
    if (!any) return;

    // D1: drop type i when some j is keener (D0_i strictly inside D_j); the
    // receiver's least favourable admissible belief is then the lowest
    // remaining prior.
    double belief = cfg.mu_high();
    for (std::size_t i = 0; i < n; ++i) {
        bool excluded = false;
        for (std::size_t j = 0; j < n && !excluded; ++j) {
            excluded = j != i && strict_subset(sets[i].d0, sets[j].d);
        }
        if (!excluded) {
            belief = cfg.mu(i);
            break;
        }
    }

    for (std::size_t th = 0; th < n; ++th) {
        const double gain = sender_value_given_belief(belief, dev, th, cfg) - v_star[th];
        if (!(gain > tol)) continue;
        const double gain_low = sender_value_given_belief(cfg.mu_low(), dev, th, cfg) - v_star[th];
        const auto kind = gain_low > tol ? ViolationKind::OffPathDeviation : ViolationKind::D1Belief;
        out.push_back({kind, th, dev, belief, gain});
    }
}

}  // namespace

BeliefSystem bayes_beliefs(const StrategyProfile& profile, const GameConfig& cfg, OffPathRule rule) {
    check_profile_size(profile, cfg);
    return on_path(profile, cfg, rule).system;
}

VerifierReport verify_d1(const StrategyProfile& profile, const GameConfig& cfg, const GridSpec& grid) {
    if (grid.n_p < 3 || grid.n_q < 3 || grid.n_beta < 3) {
        throw std::invalid_argument("verify_d1: grid resolutions must be at least 3");
    }
    check_profile_size(profile, cfg);
    if (profile.claimed_beliefs && profile.claimed_beliefs->size() != cfg.size()) {
        throw std::invalid_argument("verify_d1: claimed beliefs must list one belief per type");
    }
    const double tol = grid.tol;
    const std::size_t n = cfg.size();
    const OnPath op = on_path(profile, cfg, grid.off_path_rule);
    const auto& exps = op.system.on_path;
    const auto& path_beliefs = op.system.beliefs;

    VerifierReport rep;
    for (std::size_t th = 0; th < n; ++th) {
        const std::size_t k = op.slot[th];
        rep.on_path_beliefs.push_back(path_beliefs[k]);
        rep.on_path_payoffs.push_back(on_path_value(exps[k], path_beliefs[k], th, cfg, tol));
    }
    const auto& v_star = rep.on_path_payoffs;

    // Bayes consistency of asserted beliefs.
    if (profile.claimed_beliefs) {
        for (std::size_t th = 0; th < n; ++th) {
            const double claimed = (*profile.claimed_beliefs)[th];
            const double gap = std::abs(claimed - rep.on_path_beliefs[th]);
            if (gap > tol) {
                rep.violations.push_back(
                    {ViolationKind::BayesConsistency, th, profile.assignment[th], claimed, gap});
            }
        }
    }

    // Obedience at every informative on-path experiment.
    for (std::size_t th = 0; th < n; ++th) {
        const auto& e = profile.assignment[th];
        if (e.is_uninformative()) continue;
        const double beta = rep.on_path_beliefs[th];
        const double gap = cfg.beta_bar - posterior(beta, e, Outcome::Good);
        if (gap > tol) rep.violations.push_back({ViolationKind::Obedience, th, e, beta, gap});
    }

    // Mimicry of other on-path experiments at their own beliefs.
    for (std::size_t th = 0; th < n; ++th) {
        for (std::size_t k = 0; k < exps.size(); ++k) {
            if (k == op.slot[th]) continue;
            const double gain = on_path_value(exps[k], path_beliefs[k], th, cfg, tol) - v_star[th];
            if (gain > tol) {
                rep.violations.push_back({ViolationKind::Mimicry, th, exps[k], path_beliefs[k], gain});
            }
        }
    }

    const auto beliefs = belief_grid(cfg, grid.n_beta);
    auto on_path_has = [&](const Experiment& e) {
        return std::find(exps.begin(), exps.end(), e) != exps.end();
    };

    // The uninformative experiment is always a candidate deviation.
    if (!on_path_has(Experiment::uninformative())) {
        check_deviation(Experiment::uninformative(), cfg, v_star, beliefs, grid.off_path_rule, tol, rep.violations);
        ++rep.deviations_checked;
    }

    // Grid rows are independent; results are merged in row order so the
    // report does not depend on the thread count.
    const int rows = grid.n_p;
    std::vector<std::vector<Violation>> row_out(rows);
    std::vector<std::size_t> row_count(rows, 0);
    std::atomic<int> next{0};
    const bool llr = cfg.is_llr();
    auto worker = [&] {
        for (int i = next++; i < rows; i = next++) {
            const double p = static_cast<double>(i) / (grid.n_p - 1);
            for (int j = 0; j < grid.n_q; ++j) {
                const double q = static_cast<double>(j) / (grid.n_q - 1);
                if (!(q < p)) break;
                if (llr && (q == 0.0 || p == 1.0)) continue;  // infinite cost
                const auto dev = Experiment::make(p, q);
                if (on_path_has(dev)) continue;
                check_deviation(dev, cfg, v_star, beliefs, grid.off_path_rule, tol, row_out[i]);
                ++row_count[i];
            }
        }
    };
    unsigned threads = grid.threads ? grid.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(rows));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (int i = 0; i < rows; ++i) {
        rep.deviations_checked += row_count[i];
        rep.violations.insert(rep.violations.end(), row_out[i].begin(), row_out[i].end());
    }
    return rep;
}

}  // namespace persuasion
