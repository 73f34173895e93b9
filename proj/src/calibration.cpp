#include "camplab/calibration.hpp"

#include <cmath>
#include <stdexcept>

#include "camplab/quadrature.hpp"
#include "camplab/risk.hpp"
#include "camplab/signal_model.hpp"

namespace camplab {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kWindow = 13.0;  // exp(-s^2) is below 1e-73 outside |s| < 13

double onsager_zero(double tau) {
    return 2.0 * std::exp(-tau * tau) - kSqrtPi * tau * std::erfc(tau);
}

}  // namespace

double onsager_atom(double zeta, double tau, double abs_tol) {
    if (!(zeta >= 0.0) || !(tau >= 0.0)) throw std::domain_error("onsager_atom needs zeta, tau >= 0");
    if (zeta == 0.0) return onsager_zero(tau);
    const double lo = std::max(tau, zeta - kWindow);
    const double hi = std::max(tau, zeta) + kWindow;
    if (lo >= hi) return 2.0 - tau / zeta;  // all mass beyond the threshold
    auto f = [zeta, tau](double a) { return (2.0 - tau / a) * rice_density(a, zeta); };
    return integrate(f, lo, hi, abs_tol);
}

CalibrationResult calibrate_lambda(const SeParams& params, CalibrationScale scale, double tol) {
    validate(params);
    const SeFixedPoint fp = se_fixed_point(params, tol);
    const double nu2 = scale == CalibrationScale::effective_noise ? fp.npi_star : fp.m_star;
    const double nu = std::sqrt(nu2);
    const double eps = params.rho * params.delta;

    double expectation = (1.0 - eps) * onsager_zero(params.tau);
    if (eps > 0.0) {
        const AmplitudeGrid grid = amplitude_grid(params.signal);
        double atom_sum = 0.0;
        for (std::size_t k = 0; k < grid.mu.size(); ++k) {
            // nu = 0 only when the noise-free map contracts to zero error; the
            // rescaled amplitude is then infinite and every coordinate sits
            // far above the threshold, where the trace saturates at 2.
            const double j = nu > 0.0 ? onsager_atom(grid.mu[k] / nu, params.tau) : 2.0;
            atom_sum += grid.w[k] * j;
        }
        expectation += eps * atom_sum;
    }

    const double lambda = params.tau * nu * (1.0 - expectation / (2.0 * params.delta));
    return {lambda, params.tau, fp.m_star, fp.npi_star, expectation};
}

}  // namespace camplab
