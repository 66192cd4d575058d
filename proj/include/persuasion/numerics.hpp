#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace persuasion::numerics {

inline constexpr double kRootTol = 1e-12;
inline constexpr int kMaxBisections = 200;

struct Bracket {
    double lo;
    double hi;
};

/// Bracketed bisection for a sign change of `f` on [lo, hi], returning the
/// final bracket. The sign of f at each end is preserved; an exact zero
/// collapses the bracket to that point.
///
/// Stops once the bracket is narrower than `tol`, the midpoint can no longer
/// split it in floating point, or after `max_iter` halvings. Throws if the
/// endpoints do not bracket a root.
template <class F>
Bracket bisect_bracket(F&& f, double lo, double hi, double tol = kRootTol, int max_iter = kMaxBisections) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) return {lo, lo};
    if (f_hi == 0.0) return {hi, hi};
    if ((f_lo < 0.0) == (f_hi < 0.0)) {
        throw std::domain_error("bisect: endpoints do not bracket a root");
    }
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return {mid, mid};
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

/// Midpoint of the final bisect_bracket().
template <class F>
double bisect(F&& f, double lo, double hi, double tol = kRootTol, int max_iter = kMaxBisections) {
    const auto b = bisect_bracket(std::forward<F>(f), lo, hi, tol, max_iter);
    return 0.5 * (b.lo + b.hi);
}

struct Maximum {
    double x;
    double value;
};

/// Golden-section search for the maximum of a unimodal `f` on [lo, hi].
/// The endpoints are compared against the interior optimum so monotone
/// objectives return the correct corner.
template <class F>
Maximum golden_section_max(F&& f, double lo, double hi, double tol = 1e-10, int max_iter = 300) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double a0 = lo;
    const double b0 = hi;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    Maximum best{0.5 * (lo + hi), 0.0};
    best.value = f(best.x);
    for (double x : {a0, b0, c, d}) {
        const double v = f(x);
        if (v > best.value) best = {x, v};
    }
    return best;
}

}  // namespace persuasion::numerics
