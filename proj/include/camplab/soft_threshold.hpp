#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace camplab {

// Proximity operator of tau * |.| on the complex plane: shrinks the modulus by
// tau and preserves the phase; zero when |x| <= tau.
inline std::complex<double> soft_threshold(std::complex<double> x, double tau) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || !std::isfinite(tau)) {
        throw std::domain_error("soft_threshold: non-finite input");
    }
    if (tau < 0.0) throw std::domain_error("soft_threshold: negative threshold");
    const double a = std::hypot(x.real(), x.imag());
    if (a <= tau) return {0.0, 0.0};
    const double shrink = 1.0 - tau / a;
    return {x.real() * shrink, x.imag() * shrink};
}

// Partial derivatives of the soft threshold seen as a map R^2 -> R^2,
// (u, v) -> (eta_re, eta_im):
//   d1_re = d eta_re / du,  d2_re = d eta_re / dv,
//   d1_im = d eta_im / du,  d2_im = d eta_im / dv.
// Everywhere d2_re == d1_im, and on the active set d1_re + d2_im == 2 - tau/|x|.
struct SoftThresholdJacobian {
    double d1_re;
    double d2_re;
    double d1_im;
    double d2_im;
};

// Jacobian at a point off the circle |x| = tau. Querying within boundary_tol of
// the circle is a domain error: the map is not differentiable there.
inline SoftThresholdJacobian soft_threshold_jacobian(std::complex<double> x, double tau,
                                                     double boundary_tol = 1e-9) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || !std::isfinite(tau)) {
        throw std::domain_error("soft_threshold_jacobian: non-finite input");
    }
    if (tau < 0.0) throw std::domain_error("soft_threshold_jacobian: negative threshold");
    const double u = x.real(), v = x.imag();
    const double a = std::hypot(u, v);
    if (std::abs(a - tau) < boundary_tol) {
        throw std::domain_error("soft_threshold_jacobian: point on the threshold circle");
    }
    if (a < tau) return {0.0, 0.0, 0.0, 0.0};
    const double a3 = a * a * a;
    return {1.0 - tau * v * v / a3, tau * u * v / a3, tau * u * v / a3,
            1.0 - tau * u * u / a3};
}

}  // namespace camplab
