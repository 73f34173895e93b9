#pragma once

#include "camplab/state_evolution.hpp"

namespace camplab {

// Scale carried into the per-iteration threshold at the fixed point:
// `effective_noise` uses sqrt(sigma^2 + m*/delta) (the scale the iterative
// solver actually thresholds at, and the one that matches the penalized
// least-squares solution); `fixed_point_mse` uses sqrt(m*).
enum class CalibrationScale { effective_noise, fixed_point_mse };

struct CalibrationResult {
    double lambda;               // penalty weight equivalent to threshold multiplier tau
    double tau;                  // the multiplier that was calibrated
    double m_star;               // fixed-point per-coordinate MSE
    double npi_star;             // fixed-point noise-plus-interference energy
    double onsager_expectation;  // E[(2 - tau_*/|u|) 1{|u| > tau_*}] in [0, 2]
};

// Maps a threshold multiplier tau to the penalty weight lambda whose penalized
// least-squares solution the iterative solver converges to:
//   lambda = tau * nu * (1 - E / (2 delta)),
// where nu is the chosen scale at the SE fixed point and E the expected
// threshold-derivative trace over the observation law at that fixed point.
// Propagates DivergenceError when the fixed-point search finds no finite
// fixed point.
CalibrationResult calibrate_lambda(const SeParams& params,
                                   CalibrationScale scale = CalibrationScale::effective_noise,
                                   double tol = 1e-10);

// Expected derivative trace for one signal atom of rescaled amplitude zeta:
//   J(zeta, tau) = int_tau^inf (2 - tau/a) f_rice(a; zeta) da.
// J(0, tau) has the closed form 2 exp(-tau^2) - sqrt(pi) tau erfc(tau).
// Exposed for tests.
double onsager_atom(double zeta, double tau, double abs_tol = 1e-10);

}  // namespace camplab
