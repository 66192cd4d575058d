#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "persuasion/game_model.hpp"

namespace persuasion {

/// Raised when an operation is called in the wrong crossing regime.
class RegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Regime { SingleCrossing, TripleCrossing };

const char* to_string(Regime r);

struct CrossingReport {
    Regime regime = Regime::SingleCrossing;
    double c_good = 0.0;
    double c_bad = 0.0;
    /// Maximizer of delta(); absent when C_g <= C_b (delta is then below -1).
    std::optional<double> t_star;
    /// delta(t_star), or -1 (its supremum as t -> 1) when t_star is absent.
    double delta_at_tstar = -1.0;
    std::optional<double> t_hat;    ///< upper root of delta, TripleCrossing only
    std::optional<double> t_check;  ///< lower root of delta, TripleCrossing only
    double k_hat = 0.0;
    double x_hat = 0.0;
};

/// Likelihood-ratio coordinate t(p, q) = (1 - p) q / (p (1 - q)).
double t_of(double p, double q);

/// Marginal rate of substitution dq/dp along an indifference curve,
/// -(df/dp)/(df/dq). Valid for 0 < q < p < 1 or p == q in (0, 1).
double mrs(double p, double q, double mu, const CostModel& model);
double mrs(const Experiment& pi, double mu, const CostModel& model);

double delta(double t, double c_good, double c_bad);

/// Root of x - ln(1 + x) = 1 / C_b.
double x_hat(double c_bad);
/// Single-crossing boundary in C_g for a given C_b.
double k_hat(double c_bad);

/// Solves 2 ln t - t + 1/t = 1/C_b - 1/C_g. Requires C_g > C_b.
double t_star(double c_good, double c_bad);

CrossingReport crossing_regime(double c_good, double c_bad);

/// Tangency loci. Throw RegimeError under SingleCrossing.
double p_hat(double q, const CrossingReport& report);
double p_check(double q, const CrossingReport& report);

/// Sign of dMRS/dmu at an interior experiment: -1, 0 or +1. Zero is
/// reported when |delta(t)| <= zero_band.
int mrs_mu_sign(double p, double q, double c_good, double c_bad, double zero_band = 1e-9);

/// Shannon locus where the MRS starts rising in mu near mu = 0.
double shannon_p_tilde(double q, double c);
/// Unique p above shannon_p_tilde where types mu_i and mu_j share an MRS.
/// Throws std::invalid_argument if mu_i == mu_j.
double shannon_p_tilde_pair(double q, double c, double mu_i, double mu_j);

struct CurvePoint {
    double p;
    double q;
};

/// Traces the indifference curve of type `mu` through (p0, q0) by RK4 on
/// dq/dp = MRS with fixed step `h`, walking towards `p_end`. Stops early when
/// the curve leaves the interior 0 < q < p < 1.
std::vector<CurvePoint> trace_indifference(double p0, double q0, double mu, const CostModel& model, double p_end,
                                           double h = 1e-3);

}  // namespace persuasion
