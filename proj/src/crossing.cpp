#include "persuasion/crossing.hpp"

#include <algorithm>
#include <cmath>

#include "persuasion/numerics.hpp"

namespace persuasion {

namespace {

constexpr double kEdge = 1e-12;

}  // namespace

const char* to_string(Regime r) { return r == Regime::SingleCrossing ? "SingleCrossing" : "TripleCrossing"; }

double t_of(double p, double q) { return (1.0 - p) * q / (p * (1.0 - q)); }

double mrs(double p, double q, double mu, const CostModel& model) {
    const bool diagonal = p == q && p > 0.0 && p < 1.0;
    if (!diagonal && !(q > 0.0 && q < p && p < 1.0)) {
        throw std::domain_error("mrs: experiment must be interior");
    }
    if (diagonal) return -mu / (1.0 - mu);

    if (const auto* l = std::get_if<LlrCost>(&model)) {
        const double cg = l->c_good;
        const double cb = l->c_bad;
        const double big_l = std::log(p * (1.0 - q) / ((1.0 - p) * q));
        const double d = p - q;
        const double a1 = cb * d / (p * (1.0 - p));
        const double a2 = -1.0 + cg * big_l - a1;
        const double a3 = 1.0 + cb * big_l;
        const double a4 = -1.0 + cg * d / (q * (1.0 - q)) - cb * big_l;
        return (a1 + a2 * mu) / (a3 + a4 * mu);
    }
    const double c = std::get<ShannonCost>(model).c;
    const double r = mu * p + (1.0 - mu) * q;
    const double lq = std::log((1.0 - q) / q);
    const double lp = std::log((1.0 - p) / p);
    const double lr = std::log((1.0 - r) / r);
    const double big_l = lq - lp;
    const double big_r = 1.0 + c * (lq - lr);
    return -(mu / (1.0 - mu)) * (1.0 - c * big_l / big_r);
}

double mrs(const Experiment& pi, double mu, const CostModel& model) {
    if (pi.is_uninformative()) return -mu / (1.0 - mu);
    return mrs(pi.p(), pi.q(), mu, model);
}

double delta(double t, double c_good, double c_bad) {
    const double lt = std::log(t);
    return -(c_good - c_bad) * lt + c_good * c_bad * (lt * lt - (1.0 - t) * (1.0 - t) / t) - 1.0;
}

double x_hat(double c_bad) {
    if (!(c_bad > 0.0)) throw std::domain_error("x_hat: C_b must be positive");
    const double target = 1.0 / c_bad;
    // Bisect to float exhaustion so the defining identity holds to ~1e-12.
    return numerics::bisect([&](double x) { return x - std::log1p(x) - target; }, 1e-9, 1e6, 0.0);
}

double k_hat(double c_bad) {
    const double x = x_hat(c_bad);
    return 1.0 / (x * x / (1.0 + x) - 1.0 / c_bad);
}

double t_star(double c_good, double c_bad) {
    if (!(c_good > c_bad)) throw std::domain_error("t_star: requires C_g > C_b");
    const double rhs = 1.0 / c_bad - 1.0 / c_good;
    // The left side falls from +inf at 0 to 0 at 1.
    return numerics::bisect([&](double t) { return 2.0 * std::log(t) - t + 1.0 / t - rhs; }, kEdge, 1.0);
}

CrossingReport crossing_regime(double c_good, double c_bad) {
    if (!(c_good > 0.0 && c_bad > 0.0)) throw std::domain_error("crossing_regime: costs must be positive");
    CrossingReport rep;
    rep.c_good = c_good;
    rep.c_bad = c_bad;
    rep.x_hat = x_hat(c_bad);
    rep.k_hat = k_hat(c_bad);
    if (c_good <= c_bad) return rep;

    const double ts = t_star(c_good, c_bad);
    rep.t_star = ts;
    rep.delta_at_tstar = delta(ts, c_good, c_bad);
    if (rep.delta_at_tstar <= 0.0) return rep;

    rep.regime = Regime::TripleCrossing;
    auto d = [&](double t) { return delta(t, c_good, c_bad); };
    rep.t_hat = numerics::bisect(d, ts, 1.0 - kEdge);
    rep.t_check = numerics::bisect(d, kEdge, ts);
    return rep;
}

namespace {

double locus(double q, double t) { return q / (q + t * (1.0 - q)); }

const CrossingReport& require_triple(const CrossingReport& report) {
    if (report.regime != Regime::TripleCrossing) {
        throw RegimeError("tangency loci exist only under TripleCrossing");
    }
    return report;
}

}  // namespace

double p_hat(double q, const CrossingReport& report) { return locus(q, *require_triple(report).t_hat); }

double p_check(double q, const CrossingReport& report) { return locus(q, *require_triple(report).t_check); }

int mrs_mu_sign(double p, double q, double c_good, double c_bad, double zero_band) {
    if (!(q > 0.0 && q < p && p < 1.0)) throw std::domain_error("mrs_mu_sign: experiment must be interior");
    const double d = delta(t_of(p, q), c_good, c_bad);
    if (std::abs(d) <= zero_band) return 0;
    return d > 0.0 ? 1 : -1;
}

double shannon_p_tilde(double q, double c) {
    if (!(q > 0.0 && q < 1.0) || !(c > 0.0)) throw std::domain_error("shannon_p_tilde: bad arguments");
    return locus(q, std::exp(-1.0 / c));
}

double shannon_p_tilde_pair(double q, double c, double mu_i, double mu_j) {
    if (mu_i == mu_j) throw std::invalid_argument("shannon_p_tilde_pair: types must differ");
    const double lo_mu = std::min(mu_i, mu_j);
    const double hi_mu = std::max(mu_i, mu_j);
    const CostModel model = ShannonCost{c};
    auto gap = [&](double p) { return mrs(p, q, lo_mu, model) - mrs(p, q, hi_mu, model); };
    return numerics::bisect(gap, shannon_p_tilde(q, c), 1.0 - kEdge);
}

std::vector<CurvePoint> trace_indifference(double p0, double q0, double mu, const CostModel& model, double p_end,
                                           double h) {
    std::vector<CurvePoint> out{{p0, q0}};
    const double dir = p_end >= p0 ? 1.0 : -1.0;
    const double step = dir * std::abs(h);
    auto inside = [](double p, double q) { return q > 0.0 && q < p && p < 1.0; };
    auto slope = [&](double p, double q) { return mrs(p, q, mu, model); };

    double p = p0;
    double q = q0;
    while (dir * (p_end - p) > 0.0) {
        const double hs = dir * std::min(std::abs(step), dir * (p_end - p));
        try {
            const double k1 = slope(p, q);
            if (!inside(p + hs / 2, q + hs / 2 * k1)) break;
            const double k2 = slope(p + hs / 2, q + hs / 2 * k1);
            if (!inside(p + hs / 2, q + hs / 2 * k2)) break;
            const double k3 = slope(p + hs / 2, q + hs / 2 * k2);
            if (!inside(p + hs, q + hs * k3)) break;
            const double k4 = slope(p + hs, q + hs * k3);
            const double qn = q + hs / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (!inside(p + hs, qn) || !std::isfinite(qn)) break;
            p += hs;
            q = qn;
        } catch (const std::domain_error&) {
            break;
        }
        out.push_back({p, q});
    }
    return out;
}

}  // namespace persuasion
