#pragma once

#include <limits>

#include "persuasion/game_model.hpp"

namespace persuasion {

/// Costs and payoffs are extended reals: an experiment that reveals a state
/// under the LLR model costs IEEE +infinity, and its payoff is -infinity.
inline bool is_infinite_cost(double c) { return c == std::numeric_limits<double>::infinity(); }

/// LLR potential H(mu). Throws std::domain_error outside (0, 1).
double h_llr(double mu, double c_good, double c_bad);
/// Scaled binary entropy -C [mu ln mu + (1 - mu) ln(1 - mu)].
double h_shannon(double mu, double c);
double h_potential(double mu, const CostModel& model);

/// Kullback-Leibler divergence between Bernoulli(a) and Bernoulli(b).
double kl_bernoulli(double a, double b);

/// Natural-log binary entropy.
double binary_entropy(double x);

/// c(pi | mu). Zero for uninformative experiments.
double cost(const Experiment& pi, double mu, const CostModel& model);

/// f(pi, mu) = mu p + (1 - mu) q - c(pi | mu).
double sender_payoff(const Experiment& pi, double mu, const CostModel& model);

/// Same payoff on raw coordinates (p, q) with q <= p, for use by solvers that
/// sweep lines and curves without constructing experiments.
double sender_payoff(double p, double q, double mu, const CostModel& model);

}  // namespace persuasion
