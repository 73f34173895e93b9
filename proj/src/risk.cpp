#include "camplab/risk.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "camplab/quadrature.hpp"

namespace camplab {

namespace {
// Gaussian window half-width: exp(-13^2) ~ 6e-74 is far below every tolerance
// used here.
constexpr double kWindow = 13.0;
}  // namespace

double one_minus_bessel_ratio(double x) {
    if (x < 0.0) throw std::domain_error("one_minus_bessel_ratio: negative argument");
    if (x >= 1000.0) {
        const double ix = 1.0 / x;
        return 0.5 * ix + 0.125 * ix * ix + 0.125 * ix * ix * ix;
    }
    const double i0 = gsl_sf_bessel_I0_scaled(x);
    const double i1 = gsl_sf_bessel_I1_scaled(x);
    return (i0 - i1) / i0;
}

double rice_density(double a, double mu) {
    const double d = a - mu;
    return 2.0 * a * std::exp(-d * d) * gsl_sf_bessel_I0_scaled(2.0 * a * mu);
}

double soft_risk(double mu, double tau, double abs_tol) {
    if (!(mu >= 0.0) || !(tau >= 0.0) || !std::isfinite(mu) || !std::isfinite(tau)) {
        throw std::domain_error("soft_risk: mu and tau must be finite and >= 0");
    }
    double r = 0.0;

    // Dead-zone part: mu^2 P(A <= tau). Negligible once mu - tau exceeds the
    // Gaussian window.
    if (mu > 0.0 && tau > 0.0 && mu - tau < kWindow) {
        const double lo = std::max(0.0, mu - kWindow);
        if (lo < tau) {
            const double p = integrate([mu](double a) { return rice_density(a, mu); },
                                       lo, tau, 0.5 * abs_tol / (mu * mu + 1.0));
            r += mu * mu * std::max(0.0, p);
        }
    }

    // Active part in the shifted coordinate s = a - mu:
    //   (s - tau)^2 f0 + 2 mu (a - tau) (1 - I1/I0)(2 a mu) f0,
    // a pointwise-nonnegative decomposition of (a-tau)^2 + mu^2 - 2 mu (a-tau) E[cos]
    // that avoids the mu^2-scale cancellation of the naive form.
    const double s_lo = std::max(tau - mu, -kWindow);
    const double s_hi = std::max(tau - mu, 0.0) + kWindow;
    const double active = integrate(
        [mu, tau](double s) {
            const double a = mu + s;
            if (a <= 0.0) return 0.0;
            const double x = 2.0 * a * mu;
            const double f0 = 2.0 * a * std::exp(-s * s) * gsl_sf_bessel_I0_scaled(x);
            const double sq = (s - tau) * (s - tau);
            const double cross =
                mu > 0.0 ? 2.0 * mu * (a - tau) * one_minus_bessel_ratio(x) : 0.0;
            return (sq + cross) * f0;
        },
        s_lo, s_hi, 0.5 * abs_tol);
    r += active;
    return r;
}

}  // namespace camplab
