#pragma once

#include <Eigen/Dense>
#include <vector>

#include "camplab/ensembles.hpp"

namespace camplab {

// Residual correction term coupling successive iterations:
//   mean_field  scalar b_t = (1/2n) sum_{j active} (2 - tau_t/|u_j|), applied
//               as b_t z_t (the 1/n-variance limit of the entrywise form)
//   per_entry   entrywise z_a c1.|A_{a.}|^2-weighted derivative sums, using
//               the actual matrix entries (O(nN) per iteration)
enum class OnsagerMode { mean_field, per_entry };

// Scale estimate driving the adaptive threshold tau_t = tau * sqrt(npi_hat):
//   residual_energy   |z|^2 / n
//   rayleigh_median   median(|z_a|)^2 / ln 2  (median of a Rayleigh law with
//                     per-component variance v/2 is sqrt(v ln 2))
enum class NpiEstimator { residual_energy, rayleigh_median };

struct CampOptions {
    double tau = 2.0;
    int max_iters = 1000;
    double stop_tol = 1e-10;  // relative x-change; 0 disables early stop
    OnsagerMode onsager = OnsagerMode::mean_field;
    NpiEstimator npi_estimator = NpiEstimator::residual_energy;
    // When nonempty, iteration t thresholds at schedule[min(t, size-1)]
    // directly (no npi rescaling); the npi estimate is still recorded.
    std::vector<double> threshold_schedule;
    bool track_mse = true;
};

struct SolverResult {
    Eigen::VectorXcd x;
    int iterations = 0;
    bool converged = false;
    std::vector<double> npi_trace;            // estimate per iteration
    std::vector<double> residual_norm_trace;  // |z| before the run and after each step
    std::vector<double> mse_trace;            // |x_t - truth|^2 / N, index 0 = zero start
};

double estimate_npi(const Eigen::VectorXcd& z, NpiEstimator estimator);

// Iterates x_{t+1} = eta(x_t + A^* z_t; tau_t),
//          z_{t+1} = y - A x_{t+1} + correction(z_t),
// from x_0 = 0, z_0 = y. Throws NumericalError if any iterate stops being
// finite. `truth` (may be null) enables the MSE trace.
SolverResult run_camp(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y,
                      const Eigen::VectorXcd* truth, const CampOptions& opts);

SolverResult run_camp(const Instance& inst, const CampOptions& opts);

}  // namespace camplab
