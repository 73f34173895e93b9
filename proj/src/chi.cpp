#include "camplab/chi.hpp"

#include <cmath>
#include <stdexcept>

#include "camplab/quadrature.hpp"

namespace camplab {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

ChiPair chi_pair(double tau) {
    if (!(tau >= 0.0)) throw std::domain_error("chi_pair: tau must be >= 0");
    const double e = std::exp(-tau * tau);
    const double c = std::erfc(tau);
    return {-0.25 * kSqrtPi * c, 0.5 * e - 0.5 * kSqrtPi * tau * c};
}

ChiPair chi_pair_quadrature(double tau, double abs_tol) {
    if (!(tau >= 0.0)) throw std::domain_error("chi_pair_quadrature: tau must be >= 0");
    // exp(-w^2) confines the mass to w <= tau + ~9 at these tolerances.
    const double hi = tau + 9.0;
    const double c1 = integrate(
        [tau](double w) { return w * (tau - w) * std::exp(-w * w); }, tau, hi, abs_tol);
    const double c2 = integrate(
        [tau](double w) {
            const double d = w - tau;
            return w * d * d * std::exp(-w * w);
        },
        tau, hi, abs_tol);
    return {c1, c2};
}

double eta_zero_risk(double tau) { return 2.0 * chi_pair(tau).chi2; }

}  // namespace camplab
