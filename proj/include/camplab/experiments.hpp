#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "camplab/ensembles.hpp"
#include "camplab/logistic.hpp"
#include "camplab/signal_model.hpp"

namespace camplab {

struct SuccessRecord {
    bool success = false;
    double rel_error = 0.0;  // |xhat - truth| / |truth|
};

// success = (rel_error < tol). Throws on zero truth.
SuccessRecord success_indicator(const Eigen::VectorXcd& xhat, const Eigen::VectorXcd& truth,
                                double tol);

enum class PhaseSolver { camp, classo };

struct PhaseExperimentConfig {
    std::size_t N = 1000;
    int trials = 20;  // Monte Carlo repetitions per grid cell
    std::vector<double> delta_grid;
    double rho_band_halfwidth = 0.2;  // band around the predicted boundary
    int rho_points = 41;
    double tol = 1e-4;
    PhaseSolver solver = PhaseSolver::camp;
    MatrixKind ensemble = MatrixKind::gaussian;
    SignalModel signal{};
    int max_iters = 3000;
    std::uint64_t master_seed = 1;
    int threads = 0;  // 0 = resolve from environment / hardware
};

struct PhaseCell {
    double delta = 0.0;
    double rho = 0.0;
    int trials_run = 0;  // excludes solver failures
    int successes = 0;
    int solver_failures = 0;
};

struct PhaseFitRow {
    double delta = 0.0;
    LogisticFit fit;
    int solver_failures = 0;  // total across the band
};

struct PhaseExperimentResult {
    std::vector<PhaseCell> cells;    // (delta, rho)-ordered
    std::vector<PhaseFitRow> fits;   // one per delta; fit.rho_half is the crossing
};

// For each delta: center a rho_points grid on the predicted boundary
// (clipped so every cell plants at least one nonzero and rho*delta <= 1), run
// `trials` noise-free recoveries per cell — the iterative solver thresholds
// at that delta's optimal multiplier; the penalized solver runs in its
// small-penalty limit — and fit the success probability's logistic crossing.
// Solver failures are excluded from the fit and counted. Trials are
// independent deterministic streams, so the result is identical for any
// thread count.
PhaseExperimentResult empirical_phase_transition(const PhaseExperimentConfig& cfg);

struct UniversalityConfig {
    std::size_t N = 1000;
    double delta = 0.25;
    double rho = 0.1;
    double tau = 2.0;
    int sigma_points = 50;
    double sigma_lo = 0.001;
    double sigma_hi = 0.1;
    MatrixKind base = MatrixKind::gaussian;
    std::vector<MatrixKind> others{MatrixKind::rademacher, MatrixKind::ternary};
    SignalModel signal{};
    int max_iters = 1000;
    std::uint64_t master_seed = 1;
    int threads = 0;
};

struct UniversalityRow {
    double sigma = 0.0;
    MatrixKind ensemble_a{};
    MatrixKind ensemble_b{};
    double mse_a = 0.0;
    double mse_b = 0.0;
    bool ok_a = false;  // solver completed without numerical failure
    bool ok_b = false;
};

struct UniversalityPairSummary {
    MatrixKind ensemble_a{};
    MatrixKind ensemble_b{};
    double correlation = 0.0;      // Pearson correlation of the paired MSEs
    double paired_diff_norm = 0.0;  // |mse_a - mse_b|_2 / |mse_a|_2
    int rows_used = 0;
};

struct UniversalityResult {
    std::vector<UniversalityRow> rows;  // sigma-major, pair-minor
    std::vector<UniversalityPairSummary> summaries;
};

// Sweeps sigma over a linear grid against one fixed draw: a single planted
// signal, a single unit noise direction scaled by each sigma, and a single
// matrix per ensemble slot. Paired MSEs therefore differ only through the
// matrix law, and every ensemble traces a smooth curve in sigma.
UniversalityResult universality_sweep(const UniversalityConfig& cfg);

struct SeVsCampConfig {
    std::size_t N = 2000;
    double delta = 0.25;
    double rho = 0.1;
    double sigma = 0.1;
    double tau = 2.0;
    int t_max = 20;
    int seeds = 10;
    MatrixKind ensemble = MatrixKind::gaussian;
    SignalModel signal{};
    std::uint64_t master_seed = 1;
    int threads = 0;
};

struct SeVsCampRow {
    int t = 0;
    double empirical_mse = 0.0;  // |x_t - truth|^2 / N averaged over seeds
    double se_mse = 0.0;         // predicted m_t
};

// Runs the solver with early stopping disabled so every trace has t_max + 1
// entries, averages across seeds, and pairs each entry with the predicted
// trajectory started from m_0 = rho delta E|X|^2.
std::vector<SeVsCampRow> se_vs_camp(const SeVsCampConfig& cfg);

}  // namespace camplab
