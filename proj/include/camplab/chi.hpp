#pragma once

namespace camplab {

// The pair of Gaussian tail integrals driving the noiseless analysis:
//   chi1(tau) = integral over w >= tau of w (tau - w) exp(-w^2) dw
//   chi2(tau) = integral over w >= tau of w (w - tau)^2 exp(-w^2) dw
struct ChiPair {
    double chi1;
    double chi2;
};

// Closed forms: chi1 = -(sqrt(pi)/4) erfc(tau),
// chi2 = exp(-tau^2)/2 - (sqrt(pi) tau / 2) erfc(tau). Requires tau >= 0.
ChiPair chi_pair(double tau);

// Same integrals by adaptive quadrature; the independent route used to
// cross-check the closed forms.
ChiPair chi_pair_quadrature(double tau, double abs_tol = 1e-12);

// Mean squared modulus of the soft threshold applied to circular unit-energy
// Gaussian noise: equals 2 * chi2(tau).
double eta_zero_risk(double tau);

}  // namespace camplab
