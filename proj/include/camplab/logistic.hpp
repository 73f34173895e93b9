#pragma once

#include <vector>

namespace camplab {

struct LogisticFit {
    double a = 0.0;  // intercept of the log-odds
    double b = 0.0;  // slope of the log-odds
    double rho_half = 0.0;
    bool converged = false;
};

// Fits P(success | rho) = 1 / (1 + exp(-(a + b rho))) to grouped counts by
// Newton iterations (at most 100, relative step tolerance 1e-10) and reports
// the half-success point -a/b. Separated or quasi-separated data make (a, b)
// drift without converging while -a/b typically stabilizes; if even that is
// not finite, falls back to the midpoint between the last all-success
// abscissa and the first all-failure one (band edge when a side is missing).
LogisticFit fit_logistic(const std::vector<double>& rho, const std::vector<int>& successes,
                         const std::vector<int>& trials);

}  // namespace camplab
