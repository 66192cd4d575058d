#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "persuasion/game_model.hpp"

namespace persuasion {

/// Experiment chosen by each type, in type order. `claimed_beliefs`, when
/// present, is the interim belief the profile asserts for each type's
/// experiment and is checked against Bayes' rule.
struct StrategyProfile {
    std::vector<Experiment> assignment;
    std::optional<std::vector<double>> claimed_beliefs;
};

enum class OffPathRule {
    AssignLowest,  ///< every off-path experiment is met with belief mu_1
    D1Critical,    ///< lowest prior among types D1 does not exclude
};

/// Interim beliefs at each distinct on-path experiment plus the rule for
/// everything else.
struct BeliefSystem {
    std::vector<Experiment> on_path;
    std::vector<double> beliefs;
    OffPathRule off_path_rule = OffPathRule::D1Critical;
};

/// Bayes' rule applied to the profile.
BeliefSystem bayes_beliefs(const StrategyProfile& profile, const GameConfig& cfg,
                           OffPathRule rule = OffPathRule::D1Critical);

enum class ViolationKind { Mimicry, OffPathDeviation, D1Belief, Obedience, BayesConsistency };

const char* to_string(ViolationKind k);

struct Violation {
    ViolationKind kind;
    std::size_t theta;
    Experiment witness;
    double belief;  ///< receiver belief under which the witness is evaluated
    double margin;  ///< size of the violated inequality, always > tol
};

struct VerifierReport {
    std::vector<Violation> violations;
    std::vector<double> on_path_payoffs;  ///< v*_theta
    std::vector<double> on_path_beliefs;  ///< Bayes interim belief at each type's experiment
    std::size_t deviations_checked = 0;

    bool ok() const { return violations.empty(); }
};

struct GridSpec {
    int n_p = 201;
    int n_q = 201;
    int n_beta = 101;
    double tol = 1e-9;
    OffPathRule off_path_rule = OffPathRule::D1Critical;
    unsigned threads = 0;  ///< 0 = hardware concurrency
};

/// v̄(beta, pi | theta): f(pi, mu_theta) if pi persuades at beta, otherwise
/// -c(pi | mu_theta).
double sender_value_given_belief(double beta, const Experiment& pi, std::size_t theta, const GameConfig& cfg);

/// Uniform grid of `n` beliefs on [mu_1, mu_N] (a single point when N = 1).
std::vector<double> belief_grid(const GameConfig& cfg, int n);

struct DeviationSets {
    std::vector<double> d;   ///< beliefs where the deviation is strictly profitable
    std::vector<double> d0;  ///< beliefs where it is weakly profitable
};

DeviationSets deviation_sets(const Experiment& pi, std::size_t theta, double v_star, const GameConfig& cfg,
                             std::span<const double> beliefs, double tol = 1e-9);

/// Checks equilibrium conditions and the D1 criterion on a uniform (p, q)
/// deviation grid plus the uninformative experiment. Grid points are
/// (i / (n_p - 1), j / (n_q - 1)), so doubling n - 1 keeps every old point.
/// Throws std::invalid_argument for grids below 3 points or a profile of the
/// wrong size.
VerifierReport verify_d1(const StrategyProfile& profile, const GameConfig& cfg, const GridSpec& grid = {});

}  // namespace persuasion
