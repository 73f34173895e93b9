#pragma once

#include <vector>

#include "camplab/signal_model.hpp"

namespace camplab {

// Scalar-channel parameters: undersampling delta = n/N, sparsity rho = k/n,
// noise level sigma, threshold multiplier tau, and the nonzero-coefficient
// distribution. The nonzero fraction of the signal is eps = rho * delta.
struct SeParams {
    double delta = 0.5;
    double rho = 0.1;
    double sigma = 0.0;
    double tau = 1.0;
    SignalModel signal;
};

void validate(const SeParams& p);

// sigma^2 + m / delta: the per-coordinate energy of the effective noise at
// mean squared error m.
double noise_plus_interference(const SeParams& p, double m);

// One step of the MSE map:
//   Psi(m) = npi * [ (1 - eps) * eta_zero_risk(tau)
//                    + eps * E_mu soft_risk(mu / sqrt(npi), tau) ]
// with npi = sigma^2 + m/delta. Psi(0) = 0 when sigma = 0.
double mse_map(double m, const SeParams& p, double risk_tol = 1e-8);

// Slope of the noise-free MSE map at m = 0:
//   (rho delta (1 + tau^2) + (1 - rho delta) * eta_zero_risk(tau)) / delta.
double mse_map_derivative_at_zero(double delta, double rho, double tau);

// Geometric envelope m0 * deriv0^t implied by concavity of the map; requires
// deriv0 in (0, 1).
double convergence_bound(double deriv0, double m0, int t);

struct SeTrajectory {
    std::vector<double> m;          // m[t], with m[0] = eps * E|X|^2
    std::vector<double> npi;        // sigma^2 + m[t]/delta
    std::vector<double> threshold;  // tau * sqrt(npi[t])
    bool converged = false;
};

// Iterates the MSE map from m0 for up to t_max steps; stops early once
// |m_{t+1} - m_t| <= tol * max(m_t, 1). tol = 0 runs all t_max steps.
SeTrajectory se_trajectory(const SeParams& p, int t_max = 10000, double tol = 1e-10,
                           double risk_tol = 1e-8);

struct SeFixedPoint {
    double m_star = 0.0;
    double npi_star = 0.0;
    int iterations = 0;
};

// Stable fixed point of the MSE map, located by iteration from m0 and verified
// against two auxiliary starts (the map is concave and increasing, so the
// stable fixed point is unique). Noise-free trajectories that grow past
// 1e6 * m0 raise DivergenceError: the map has no contracting tail (threshold
// so low that eta_zero_risk(tau) >= delta), so no finite fixed point exists.
SeFixedPoint se_fixed_point(const SeParams& p, double tol = 1e-10, int t_max = 10000,
                            double risk_tol = 1e-8);

}  // namespace camplab
