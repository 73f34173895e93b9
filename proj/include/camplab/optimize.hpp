#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace camplab {

struct ScalarOptimum {
    double x;
    double value;
};

// Golden-section minimization of a unimodal f on [lo, hi] to x-accuracy xtol.
inline ScalarOptimum golden_min(const std::function<double(double)>& f, double lo,
                                double hi, double xtol = 1e-10) {
    constexpr double invphi = 0.6180339887498948482;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

inline ScalarOptimum golden_max(const std::function<double(double)>& f, double lo,
                                double hi, double xtol = 1e-10) {
    auto r = golden_min([&](double x) { return -f(x); }, lo, hi, xtol);
    return {r.x, -r.value};
}

// Coarse scan over `points` equispaced samples on [lo, hi] followed by a
// golden-section refinement bracketing the best sample.
inline ScalarOptimum scan_then_golden_max(const std::function<double(double)>& f,
                                          double lo, double hi, int points,
                                          double xtol = 1e-10) {
    if (points < 3) throw std::invalid_argument("scan needs at least 3 points");
    const double h = (hi - lo) / (points - 1);
    int best = 0;
    double best_val = f(lo);
    for (int i = 1; i < points; ++i) {
        const double v = f(lo + i * h);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double a = lo + h * (best > 0 ? best - 1 : 0);
    const double b = lo + h * (best < points - 1 ? best + 1 : points - 1);
    return golden_max(f, a, b, xtol);
}

// Bisection root of f (assumed to change sign once) on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double xtol = 1e-12, int max_iter = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::invalid_argument("bisect: no sign change");
    for (int i = 0; i < max_iter && hi - lo > xtol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace camplab
