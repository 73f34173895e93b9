#pragma once

#include <functional>

namespace camplab {

// Adaptive Gauss-Kronrod 15(7) integration of f over [a, b] to absolute
// accuracy abs_tol. Bisects on the local K15-G7 error estimate; the budget is
// split between halves. Intervals narrower than ~1e-14 * |b - a| are accepted
// as-is so the recursion always terminates.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 48);

// Fixed (non-adaptive) composite Gauss-Legendre rule with `panels` panels of
// 16 nodes each. Independent of the adaptive path; used as a cross-check.
double integrate_fixed(const std::function<double(double)>& f, double a, double b,
                       int panels = 64);

}  // namespace camplab
