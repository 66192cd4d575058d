#pragma once

#include <optional>

#include "persuasion/game_model.hpp"

namespace persuasion {

/// Optimal experiment of a sender whose type is known to the receiver.
struct BenchmarkSolution {
    Experiment experiment;
    double value = 0.0;          ///< V(mu, beta) >= 0
    std::optional<double> p_sym;  ///< interior maximizer along q = Q(beta) p, when value > 0
    double feasibility = 0.0;    ///< slope of the payoff along the obedience line at p = 0
};

/// LLR feasibility index: V(mu, beta) > 0 iff the result is positive.
double feasibility(double c_good, double c_bad, double mu, double beta, double beta_bar);

/// Model-generic feasibility (slope of f((p, Q p), mu) at p = 0).
double feasibility(const CostModel& model, double mu, double beta, double beta_bar);

/// Requires mu in (0, 1) and beta in (0, beta_bar).
BenchmarkSolution solve_benchmark(double mu, double beta, const CostModel& model, double beta_bar);
BenchmarkSolution solve_benchmark(double mu, double beta, const GameConfig& cfg);

/// V(mu, beta) shorthand.
double benchmark_value(double mu, double beta, const GameConfig& cfg);

struct AuxMNJK {
    double m;
    double n;
    double j;
    double k;
};

/// Auxiliary functions of the LLR first-order conditions; N J - M K equals
/// (p - q) / (1 - q) * delta(t(p, q)). Throws std::domain_error off the interior.
AuxMNJK aux_mnjk(double p, double q, double c_good, double c_bad);

/// Derivative of f((p, Q p), mu) in p for the LLR model.
double benchmark_slope(double p, double ratio, double mu, double c_good, double c_bad);

}  // namespace persuasion
