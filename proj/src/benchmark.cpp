#include "persuasion/benchmark.hpp"

#include <cmath>
#include <stdexcept>

#include "persuasion/costs.hpp"
#include "persuasion/numerics.hpp"

namespace persuasion {

namespace {

constexpr double kLo = 1e-10;
constexpr double kHi = 1.0 - 1e-10;
constexpr double kPTol = 1e-10;

void check_beliefs(double mu, double beta, double beta_bar) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("benchmark: mu must lie in (0, 1)");
    if (!(beta > 0.0 && beta < beta_bar)) throw std::domain_error("benchmark: beta must lie in (0, beta_bar)");
}

}  // namespace

double feasibility(double c_good, double c_bad, double mu, double beta, double beta_bar) {
    const double r = q_ratio(beta, beta_bar);
    const double lr = std::log(r);
    return mu + (1.0 - mu) * r + mu * c_good * (lr + 1.0 - r) - (1.0 - mu) * c_bad * (r * lr + 1.0 - r);
}

double feasibility(const CostModel& model, double mu, double beta, double beta_bar) {
    if (const auto* l = std::get_if<LlrCost>(&model)) return feasibility(l->c_good, l->c_bad, mu, beta, beta_bar);
    const double c = std::get<ShannonCost>(model).c;
    const double r = q_ratio(beta, beta_bar);
    const double m = mu + (1.0 - mu) * r;
    return m - c * (mu * std::log(1.0 / m) + (1.0 - mu) * r * std::log(r / m));
}

AuxMNJK aux_mnjk(double p, double q, double c_good, double c_bad) {
    if (!(q > 0.0 && q < p && p < 1.0)) throw std::domain_error("aux_mnjk: experiment must be interior");
    const double big_l = std::log(p * (1.0 - q) / ((1.0 - p) * q));
    const double d = p - q;
    AuxMNJK a{};
    a.m = 1.0 + c_good * (d / (p * (1.0 - q)) - big_l);
    a.n = (q / p) * (1.0 - c_bad * (d / ((1.0 - p) * q) - big_l));
    a.j = (p * (1.0 - p)) / (q * (1.0 - q)) * (1.0 + c_good * (d / (p * (1.0 - p)) - big_l));
    a.k = 1.0 - c_bad * (d / (q * (1.0 - q)) - big_l);
    return a;
}

double benchmark_slope(double p, double ratio, double mu, double c_good, double c_bad) {
    const auto a = aux_mnjk(p, ratio * p, c_good, c_bad);
    return mu * a.m + (1.0 - mu) * a.n;
}

BenchmarkSolution solve_benchmark(double mu, double beta, const CostModel& model, double beta_bar) {
    check_beliefs(mu, beta, beta_bar);
    const double r = q_ratio(beta, beta_bar);
    BenchmarkSolution sol;
    sol.feasibility = feasibility(model, mu, beta, beta_bar);
    if (!(sol.feasibility > 0.0)) return sol;

    auto along = [&](double p) { return sender_payoff(p, r * p, mu, model); };
    double p_opt = 0.0;
    if (const auto* l = std::get_if<LlrCost>(&model)) {
        auto slope = [&](double p) { return benchmark_slope(p, r, mu, l->c_good, l->c_bad); };
        if (slope(kLo) > 0.0 && slope(kHi) < 0.0) {
            p_opt = numerics::bisect(slope, kLo, kHi, kPTol);
        } else {
            p_opt = numerics::golden_section_max(along, kLo, kHi, kPTol).x;
        }
    } else {
        p_opt = numerics::golden_section_max(along, kLo, 1.0, kPTol).x;
    }

    const double v = along(p_opt);
    if (!(v > 0.0)) return sol;
    sol.experiment = Experiment::make(p_opt, r * p_opt);
    sol.value = v;
    sol.p_sym = p_opt;
    return sol;
}

BenchmarkSolution solve_benchmark(double mu, double beta, const GameConfig& cfg) {
    return solve_benchmark(mu, beta, cfg.cost, cfg.beta_bar);
}

double benchmark_value(double mu, double beta, const GameConfig& cfg) {
    return solve_benchmark(mu, beta, cfg).value;
}

}  // namespace persuasion
