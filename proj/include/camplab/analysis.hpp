#pragma once

namespace camplab {

// Largest recoverable sparsity at undersampling delta for a fixed threshold
// multiplier tau, from the slope-one condition of the noise-free MSE map:
//   rho(tau, delta) = (delta - eta_zero_risk(tau)) / (delta * (1 + tau^2 - eta_zero_risk(tau))).
// May be negative when tau retains too much noise energy for this delta.
double recoverable_rho(double tau, double delta);

struct PhasePoint {
    double rho_se;    // sup over tau of recoverable_rho
    double tau_star;  // maximizing tau
};

// Recovery boundary rho_SE(delta): 512-point coarse scan over tau in [0, 20]
// refined by golden section to 1e-10.
PhasePoint phase_transition(double delta);

// The boundary in parametric form (tau -> (delta, rho)). The two variants
// differ in one term of the delta denominator (chi1 vs chi2); `consistent`
// satisfies the first-order optimality condition of recoverable_rho and
// reproduces phase_transition, so it serves as an independent cross-check.
// `as_stated` keeps the chi2 form for comparison; it does not match.
enum class ParametricVariant { consistent, as_stated };

struct ParametricPoint {
    double delta;
    double rho;
};

ParametricPoint phase_transition_parametric(double tau,
                                            ParametricVariant variant = ParametricVariant::consistent);

// Small-delta asymptote of the recovery boundary: 1 / log(1/(2 delta)),
// valid for delta < 1/2.
double phase_transition_asymptote(double delta);

struct MinimaxPoint {
    double value;     // minimax MSE per coordinate at unit noise
    double tau_star;  // minimizing threshold (infinity at eps = 0)
};

// Minimax soft-threshold risk over the sparsity class with nonzero fraction
// eps: min over tau of 2 (1 - eps) chi2(tau) + eps (1 + tau^2).
MinimaxPoint minimax_risk(double eps);

// Sparsity level where the minimax risk meets the undersampling budget:
// the root of minimax_risk(rho * delta) = delta. Coincides with rho_SE.
double rho_mse(double delta);

// Worst-case noise sensitivity of the tuned estimator:
//   NS(delta, rho) = M(rho delta) / (1 - M(rho delta)/delta) below rho_mse,
// +infinity at and above it.
double noise_sensitivity(double delta, double rho);

}  // namespace camplab
