#include "camplab/logistic.hpp"

#include <cmath>
#include <stdexcept>

namespace camplab {

namespace {

double midpoint_crossing(const std::vector<double>& rho, const std::vector<int>& successes,
                         const std::vector<int>& trials) {
    // midpoint between the last all-success abscissa and the first all-failure
    // one; falls back to the band edge when either side is missing
    double hi = rho.front();
    double lo = rho.back();
    bool any_hi = false, any_lo = false;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (trials[i] == 0) continue;
        if (successes[i] == trials[i]) {
            hi = rho[i];
            any_hi = true;
        } else if (successes[i] == 0 && !any_lo) {
            lo = rho[i];
            any_lo = true;
        }
    }
    if (!any_hi) return rho.front();
    if (!any_lo) return rho.back();
    return 0.5 * (hi + lo);
}

}  // namespace

LogisticFit fit_logistic(const std::vector<double>& rho, const std::vector<int>& successes,
                         const std::vector<int>& trials) {
    if (rho.size() != successes.size() || rho.size() != trials.size() || rho.empty())
        throw std::invalid_argument("grouped counts need matching nonempty arrays");
    for (std::size_t i = 0; i < rho.size(); ++i)
        if (trials[i] < 0 || successes[i] < 0 || successes[i] > trials[i])
            throw std::invalid_argument("counts must satisfy 0 <= successes <= trials");

    LogisticFit fit;
    for (int it = 0; it < 100; ++it) {
        double g0 = 0.0, g1 = 0.0;      // gradient of the log-likelihood
        double h00 = 0.0, h01 = 0.0, h11 = 0.0;  // negative Hessian
        for (std::size_t i = 0; i < rho.size(); ++i) {
            if (trials[i] == 0) continue;
            const double eta = fit.a + fit.b * rho[i];
            const double p = 1.0 / (1.0 + std::exp(-eta));
            const double w = trials[i] * p * (1.0 - p);
            const double r = successes[i] - trials[i] * p;
            g0 += r;
            g1 += r * rho[i];
            h00 += w;
            h01 += w * rho[i];
            h11 += w * rho[i] * rho[i];
        }
        const double det = h00 * h11 - h01 * h01;
        if (!(std::abs(det) > 1e-300)) break;  // flat likelihood: separation
        const double da = (h11 * g0 - h01 * g1) / det;
        const double db = (h00 * g1 - h01 * g0) / det;
        fit.a += da;
        fit.b += db;
        if (!std::isfinite(fit.a) || !std::isfinite(fit.b)) break;
        const double scale = 1.0 + std::hypot(fit.a, fit.b);
        if (std::hypot(da, db) <= 1e-10 * scale) {
            fit.converged = true;
            break;
        }
    }

    const double crossing = -fit.a / fit.b;
    fit.rho_half = std::isfinite(crossing) ? crossing : midpoint_crossing(rho, successes, trials);
    return fit;
}

}  // namespace camplab
