#pragma once

namespace camplab {

// Mean squared estimation error of the soft threshold on a single coordinate:
//   r(mu, tau) = E |eta(mu e^{i theta} + Z; tau) - mu e^{i theta}|^2
// with Z circular complex Gaussian of unit total variance (each component
// variance 1/2). The value is independent of the phase theta, so mu >= 0.
//
// Evaluated by 1-D quadrature over the Rice-distributed modulus of the
// observation, in the shifted coordinate s = a - mu so the integrand carries
// no mu^2-scale cancellation; accurate to ~abs_tol uniformly in mu, including
// the deep large-mu regime where r approaches 1 + tau^2.
double soft_risk(double mu, double tau, double abs_tol = 1e-8);

// 1 - I1(x)/I0(x) for modified Bessel functions of the first kind, stable for
// all x >= 0 (asymptotic series above x = 1000). Exposed for tests.
double one_minus_bessel_ratio(double x);

// Rice density of the observation modulus: f0(a) = 2 a exp(-(a-mu)^2) i0e(2 a mu),
// where i0e is the exponentially scaled Bessel I0. Exposed for tests and for
// the calibration expectation.
double rice_density(double a, double mu);

}  // namespace camplab
