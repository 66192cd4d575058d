#include "persuasion/costs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace persuasion {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_open_unit(double mu, const char* who) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error(std::string(who) + ": belief must lie in (0, 1)");
}

/// a ln(a / b) with 0 ln 0 = 0 and a ln(a / 0) = +inf for a > 0.
double xlog_ratio(double a, double b) {
    if (a == 0.0) return 0.0;
    if (b == 0.0) return kInf;
    return a * std::log(a / b);
}

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

double h_llr(double mu, double c_good, double c_bad) {
    require_open_unit(mu, "h_llr");
    const double l = std::log((1.0 - mu) / mu);
    return c_good * mu * l - c_bad * (1.0 - mu) * l;
}

double h_shannon(double mu, double c) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw std::domain_error("h_shannon: belief must lie in [0, 1]");
    return c * binary_entropy(mu);
}

double h_potential(double mu, const CostModel& model) {
    if (const auto* l = std::get_if<LlrCost>(&model)) return h_llr(mu, l->c_good, l->c_bad);
    return h_shannon(mu, std::get<ShannonCost>(model).c);
}

double kl_bernoulli(double a, double b) { return xlog_ratio(a, b) + xlog_ratio(1.0 - a, 1.0 - b); }

double binary_entropy(double x) { return -(xlogx(x) + xlogx(1.0 - x)); }

double cost(const Experiment& pi, double mu, const CostModel& model) {
    require_open_unit(mu, "cost");
    if (pi.is_uninformative()) return 0.0;
    const double p = pi.p();
    const double q = pi.q();
    if (const auto* l = std::get_if<LlrCost>(&model)) {
        if ((q == 0.0 && p > 0.0) || (p == 1.0 && q < 1.0)) return kInf;
        return l->c_good * mu * kl_bernoulli(p, q) + l->c_bad * (1.0 - mu) * kl_bernoulli(q, p);
    }
    // Mutual information between state and outcome.
    const double c = std::get<ShannonCost>(model).c;
    const double r = mu * p + (1.0 - mu) * q;
    const double mi = binary_entropy(r) - mu * binary_entropy(p) - (1.0 - mu) * binary_entropy(q);
    return c * std::max(mi, 0.0);
}

double sender_payoff(const Experiment& pi, double mu, const CostModel& model) {
    const double c = cost(pi, mu, model);
    if (is_infinite_cost(c)) return -kInf;
    return mu * pi.p() + (1.0 - mu) * pi.q() - c;
}

double sender_payoff(double p, double q, double mu, const CostModel& model) {
    return sender_payoff(Experiment::make(p, q), mu, model);
}

}  // namespace persuasion
