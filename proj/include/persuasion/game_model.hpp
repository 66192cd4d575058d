#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace persuasion {

enum class Outcome { Good, Bad };

/// A binary experiment identified by p = P(g | G) and q = P(g | B), p >= q.
///
/// Every experiment with p == q carries no information and has zero cost, so
/// they are collapsed into one canonical value stored as (0, 0) with the
/// uninformative flag set.
class Experiment {
public:
    Experiment() = default;

    /// Throws std::invalid_argument unless 0 <= q <= p <= 1.
    static Experiment make(double p, double q);
    static Experiment uninformative() { return {}; }

    double p() const { return p_; }
    double q() const { return q_; }
    bool is_uninformative() const { return uninformative_; }
    /// 0 < q < p < 1.
    bool is_interior() const { return !uninformative_ && q_ > 0.0 && p_ < 1.0; }

    bool operator==(const Experiment&) const = default;

private:
    Experiment(double p, double q, bool uninformative) : p_(p), q_(q), uninformative_(uninformative) {}

    double p_ = 0.0;
    double q_ = 0.0;
    bool uninformative_ = true;
};

/// Log-likelihood-ratio cost with separate prices for good and bad news.
struct LlrCost {
    double c_good;
    double c_bad;
};

/// Entropy-reduction cost scaled by `c`.
struct ShannonCost {
    double c;
};

using CostModel = std::variant<LlrCost, ShannonCost>;

struct SenderType {
    double mu;    ///< prior on the good state held by this type
    double prob;  ///< marginal probability of this type
};

/// A validated game instance. Construct through validate_config().
struct GameConfig {
    CostModel cost;
    double beta_bar = 0.5;
    std::vector<SenderType> types;
    double mu0 = 0.5;  ///< common prior, sum of prob * mu

    std::size_t size() const { return types.size(); }
    double mu(std::size_t theta) const { return types[theta].mu; }
    double mu_low() const { return types.front().mu; }
    double mu_high() const { return types.back().mu; }
    bool is_llr() const { return std::holds_alternative<LlrCost>(cost); }
    /// Throws std::logic_error when the model is not LLR.
    const LlrCost& llr() const;
};

/// Unvalidated configuration content, as read from a document.
struct RawConfig {
    CostModel cost = LlrCost{1.0, 1.0};
    double beta_bar = 0.5;
    std::vector<SenderType> types;
};

struct ConfigError {
    std::string field;
    std::string message;
};

struct ConfigValidation {
    std::optional<GameConfig> config;
    std::vector<ConfigError> errors;

    bool ok() const { return config.has_value(); }
};

/// Checks every invariant of GameConfig and reports all violations at once.
ConfigValidation validate_config(const RawConfig& raw);

/// Convenience wrapper that throws std::invalid_argument listing every error.
GameConfig make_config(const RawConfig& raw);

/// Receiver beliefs attached to one experiment.
struct BeliefState {
    double interim;
    double posterior_g;
    double posterior_b;
    std::vector<double> type_weights;
};

/// Builds the belief state from (unnormalized) weights over the types.
BeliefState belief_state(const GameConfig& cfg, std::span<const double> weights, const Experiment& pi);

/// Odds of `beta` relative to the odds of the action threshold.
double q_ratio(double beta, double beta_bar);
double q_ratio_inv(double r, double beta_bar);

/// Bayes posterior on the good state after outcome `s`. Uninformative
/// experiments return `beta` unchanged.
double posterior(double beta, const Experiment& pi, Outcome s);
/// Raw form on (p, q); throws std::domain_error for a zero-probability outcome.
double posterior(double beta, double p, double q, Outcome s);

/// True iff the good outcome moves a receiver at interim belief `beta` to the
/// high action. Indifference counts as persuaded.
bool is_persuasive(const Experiment& pi, double beta, double beta_bar);

enum class Informativeness { More, Less, Equivalent, Incomparable };

const char* to_string(Informativeness order);

/// Blackwell order of `a` relative to `b`. Ratios are compared by
/// cross-multiplication; `rel_tol` widens the equality band (0 = exact).
Informativeness blackwell_compare(const Experiment& a, const Experiment& b, double rel_tol = 0.0);

}  // namespace persuasion
