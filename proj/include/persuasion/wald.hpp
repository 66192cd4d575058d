#pragma once

#include <cstdint>
#include <utility>

#include "persuasion/game_model.hpp"

namespace persuasion {

/// Threshold stopping rule on iid binary signals: sample until the count of
/// good minus bad signals hits n_bar or n_low.
struct WaldConfig {
    double alpha = 0.6;  ///< P(g | G) = P(b | B), in (1/2, 1)
    double c_g = 1.0;    ///< cost of a g signal
    double c_b = 1.0;    ///< cost of a b signal
    int n_bar = 1;
    int n_low = -1;
    double mu0 = 0.5;
    std::uint64_t seed = 0;
    std::uint64_t n_paths = 100000;
    std::uint64_t max_steps = 10'000'000;  ///< per-path cap
    unsigned threads = 0;                  ///< 0 = hardware concurrency
};

/// Throws std::invalid_argument unless alpha in (1/2, 1), costs >= 0,
/// n_low < 0 < n_bar and mu0 in (0, 1).
void validate(const WaldConfig& w);

struct SimStats {
    std::uint64_t seed = 0;
    std::uint64_t n_paths = 0;
    double mean_cost = 0.0;
    double se_cost = 0.0;
    double p_emp = 0.0;  ///< P(top | G)
    double q_emp = 0.0;  ///< P(top | B)
    double mean_draws = 0.0;
    std::uint64_t paths_good = 0;
    std::uint64_t paths_bad = 0;
    double mean_draws_good = 0.0;
    double mean_draws_bad = 0.0;
    double mean_cost_good = 0.0;
    double se_cost_good = 0.0;
    double mean_cost_bad = 0.0;
    double se_cost_bad = 0.0;
    double mean_posterior = 0.0;  ///< average terminal posterior, should be mu0
    double se_posterior = 0.0;
    std::uint64_t cap_hits = 0;  ///< paths stopped by max_steps (excluded from p_emp, q_emp)
};

/// (p, q): probabilities of reaching n_bar first in the good and bad state.
Experiment thresholds_to_experiment(double alpha, int n_bar, int n_low);

/// Posteriors at the upper and lower threshold.
std::pair<double, double> posterior_thresholds(double mu0, double alpha, int n_bar, int n_low);

/// Expected signal cost E[c_g n_g + c_b n_b] of the stopping rule.
double closed_form_cost(const WaldConfig& w);

/// Expected cost conditional on the good and bad state.
std::pair<double, double> conditional_costs(const WaldConfig& w);

/// LLR constants (C_g, C_b) that reproduce the sampling cost.
LlrCost map_to_llr_constants(double alpha, double c_g, double c_b);

/// Monte Carlo of the stopping rule. Path i draws from a counter-based stream
/// keyed by (seed, i), so results do not depend on the thread count.
SimStats simulate(const WaldConfig& w);

}  // namespace persuasion
