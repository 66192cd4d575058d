#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "persuasion/crossing.hpp"
#include "persuasion/game_model.hpp"

namespace persuasion {

/// p2 has no intersection with the obedience line of the top type.
class NoIntersection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws RegimeError unless the config uses the LLR model in `want`. The
/// message carries K̂(C_b) and the supplied C_g.
CrossingReport require_regime(const GameConfig& cfg, Regime want);

/// Admissible pooling experiments (p̂(q), q) for q in [q_lo, q_hi].
struct PoolingSet {
    double q_lo = 0.0;
    double q_hi = 0.0;
    double obedience_bound = 0.0;      ///< q̄: q̄ / p̂(q̄) = Q(mu0)
    double participation_bound = 0.0;  ///< smallest q where the lowest type joins
    double large_dev_bound = 0.0;      ///< q̂
    double t_hat = 0.0;

    bool nonempty() const { return q_lo <= q_hi && q_hi > 0.0; }
};

/// The pooling experiment (p̂(q), q).
Experiment pooling_experiment(double q, const CrossingReport& report);

/// Larger p on the line q = Q(mu_N) p where type `mu` is indifferent to
/// (p̂(q), q). Requires TripleCrossing.
double p2(double mu, double q, const GameConfig& cfg);

/// Large-deviation bound. Requires TripleCrossing.
double q_hat(const GameConfig& cfg);

PoolingSet pooling_set(const GameConfig& cfg);

struct SeparatingType {
    Experiment experiment;
    double payoff = 0.0;   ///< v*_theta
    bool binding = false;  ///< the adjacent lower type's constraint binds
};

struct SeparatingOutcome {
    std::vector<SeparatingType> types;
};

/// Requires SingleCrossing.
SeparatingOutcome separating(const GameConfig& cfg);

struct UninformativeReport {
    bool exists = false;
    Experiment pi_star;  ///< zero payoff for every prior
    double mu_bar = 0.0;
    bool no_guarantee = false;  ///< V(mu_1, mu_1) == 0
};

/// Zero-payoff curves: q with f((p, q), 1) = 0 and f((p, q), 0) = 0.
double sigma_good(double p, double c_good);
double sigma_bad(double p, double c_bad);

/// Requires the LLR model.
UninformativeReport uninformative_report(const GameConfig& cfg);

struct BlackwellEntry {
    std::size_t theta = 0;  ///< type index, or the type count for the common prior
    Experiment outcome;
    Experiment benchmark;
    Informativeness order = Informativeness::Equivalent;
};

/// Relative tolerance used when two experiments share an obedience line up
/// to rounding.
inline constexpr double kBlackwellTol = 1e-9;

/// Each separating experiment against the benchmark at its own prior.
std::vector<BlackwellEntry> compare_blackwell(const SeparatingOutcome& outcome, const GameConfig& cfg);
/// The top pooling experiment (p̂(q̄), q̄) against the benchmark at mu0.
BlackwellEntry compare_blackwell(const PoolingSet& set, const GameConfig& cfg);

}  // namespace persuasion
