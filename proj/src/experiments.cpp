#include "camplab/experiments.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "camplab/analysis.hpp"
#include "camplab/camp.hpp"
#include "camplab/errors.hpp"
#include "camplab/fista.hpp"
#include "camplab/parallel.hpp"
#include "camplab/state_evolution.hpp"

namespace camplab {

SuccessRecord success_indicator(const Eigen::VectorXcd& xhat, const Eigen::VectorXcd& truth,
                                double tol) {
    if (!(tol > 0.0)) throw std::domain_error("tol must be positive");
    if (xhat.size() != truth.size()) throw std::invalid_argument("length mismatch");
    const double tnorm = truth.norm();
    if (tnorm == 0.0) throw std::domain_error("success is undefined for a zero truth");
    const double rel = (xhat - truth).norm() / tnorm;
    return {rel < tol, rel};
}

PhaseExperimentResult empirical_phase_transition(const PhaseExperimentConfig& cfg) {
    if (cfg.N == 0) throw std::domain_error("N must be positive");
    if (cfg.rho_points < 2) throw std::domain_error("need at least 2 rho grid points");
    if (!(cfg.tol > 0.0)) throw std::domain_error("tol must be positive");
    if (cfg.trials < 0) throw std::domain_error("trials must be nonnegative");
    if (!(cfg.rho_band_halfwidth > 0.0)) throw std::domain_error("band halfwidth must be positive");
    PhaseExperimentResult out;
    if (cfg.trials == 0 || cfg.delta_grid.empty()) return out;

    const std::size_t D = cfg.delta_grid.size();
    const auto R = static_cast<std::size_t>(cfg.rho_points);
    const auto M = static_cast<std::size_t>(cfg.trials);

    std::vector<double> tau_star(D);
    std::vector<std::vector<double>> rho_grid(D, std::vector<double>(R));
    for (std::size_t d = 0; d < D; ++d) {
        const double delta = cfg.delta_grid[d];
        const PhasePoint pp = phase_transition(delta);
        tau_star[d] = pp.tau_star;
        const double Nd = static_cast<double>(cfg.N);
        // at least one planted nonzero, and never more nonzeros than rows
        const double lo = std::max(pp.rho_se - cfg.rho_band_halfwidth, 1.0 / (delta * Nd));
        const double hi = std::max(lo, std::min(pp.rho_se + cfg.rho_band_halfwidth, 1.0 / delta));
        for (std::size_t j = 0; j < R; ++j)
            rho_grid[d][j] = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(R - 1);
    }

    // flat (delta, rho, trial) task space; 0 = solver failure, 1 = miss, 2 = hit
    std::vector<std::uint8_t> outcome(D * R * M, 0);
    const int threads = resolve_threads(cfg.threads);
    parallel_for(outcome.size(), threads, [&](std::size_t idx) {
        const std::size_t d = idx / (R * M);
        const std::size_t j = (idx / M) % R;
        const std::size_t m = idx % M;
        InstanceSpec spec;
        spec.N = cfg.N;
        spec.delta = cfg.delta_grid[d];
        spec.rho = rho_grid[d][j];
        spec.sigma = 0.0;
        spec.matrix = cfg.ensemble;
        spec.signal = cfg.signal;
        const Instance inst = make_instance(spec, cfg.master_seed, stream_key({1, d, j, m}));
        try {
            Eigen::VectorXcd xhat;
            if (cfg.solver == PhaseSolver::camp) {
                CampOptions opts;
                opts.tau = tau_star[d];
                opts.max_iters = cfg.max_iters;
                opts.track_mse = false;
                xhat = run_camp(inst, opts).x;
            } else {
                FistaOptions opts;
                opts.lambda = basis_pursuit_lambda(inst.A, inst.y);
                opts.max_iters = cfg.max_iters;
                xhat = run_classo(inst.A, inst.y, opts).x;
            }
            outcome[idx] = success_indicator(xhat, inst.truth, cfg.tol).success ? 2 : 1;
        } catch (const NumericalError&) {
            outcome[idx] = 0;
        }
    });

    for (std::size_t d = 0; d < D; ++d) {
        std::vector<int> successes(R, 0), trials_run(R, 0);
        int failures_total = 0;
        for (std::size_t j = 0; j < R; ++j) {
            PhaseCell cell;
            cell.delta = cfg.delta_grid[d];
            cell.rho = rho_grid[d][j];
            for (std::size_t m = 0; m < M; ++m) {
                const std::uint8_t o = outcome[(d * R + j) * M + m];
                if (o == 0)
                    ++cell.solver_failures;
                else {
                    ++cell.trials_run;
                    if (o == 2) ++cell.successes;
                }
            }
            successes[j] = cell.successes;
            trials_run[j] = cell.trials_run;
            failures_total += cell.solver_failures;
            out.cells.push_back(cell);
        }
        PhaseFitRow row;
        row.delta = cfg.delta_grid[d];
        row.fit = fit_logistic(rho_grid[d], successes, trials_run);
        row.solver_failures = failures_total;
        out.fits.push_back(row);
    }
    return out;
}

UniversalityResult universality_sweep(const UniversalityConfig& cfg) {
    if (cfg.N == 0) throw std::domain_error("N must be positive");
    if (cfg.sigma_points < 1) throw std::domain_error("need at least one sigma");
    if (!(cfg.sigma_lo > 0.0) || cfg.sigma_hi < cfg.sigma_lo)
        throw std::domain_error("sigma range must satisfy 0 < lo <= hi");
    if (cfg.others.empty()) throw std::domain_error("need at least one comparison ensemble");

    const auto P = static_cast<std::size_t>(cfg.sigma_points);
    const std::size_t E = 1 + cfg.others.size();
    const auto n = static_cast<std::size_t>(cfg.delta * static_cast<double>(cfg.N));
    const auto k =
        static_cast<std::size_t>(cfg.rho * cfg.delta * static_cast<double>(cfg.N));
    const auto Nd = static_cast<double>(cfg.N);

    std::vector<double> sigma(P);
    for (std::size_t i = 0; i < P; ++i)
        sigma[i] = P == 1 ? cfg.sigma_lo
                          : cfg.sigma_lo + (cfg.sigma_hi - cfg.sigma_lo) * static_cast<double>(i) /
                                               static_cast<double>(P - 1);

    std::vector<double> mse(P * E, 0.0);
    std::vector<std::uint8_t> ok(P * E, 0);
    const int threads = resolve_threads(cfg.threads);
    parallel_for(P * E, threads, [&](std::size_t idx) {
        const std::size_t i = idx / E;
        const std::size_t e = idx % E;
        const MatrixKind kind = e == 0 ? cfg.base : cfg.others[e - 1];
        // One planted signal, one unit noise direction (scaled by sigma), and
        // one matrix per ensemble slot, all fixed across the sweep: paired
        // MSEs differ only through the matrix law, and each ensemble traces a
        // smooth curve in sigma instead of 50 independent redraws.
        RngStream sig_rng(cfg.master_seed, stream_key({2, 1}));
        RngStream noise_rng(cfg.master_seed, stream_key({2, 2}));
        RngStream mat_rng(cfg.master_seed, stream_key({2, 3 + e}));
        const Eigen::VectorXcd truth = sample_signal(cfg.N, k, cfg.signal, sig_rng);
        const Eigen::VectorXcd noise = sample_noise(n, sigma[i], noise_rng);
        const Eigen::MatrixXcd A = sample_matrix(n, cfg.N, kind, mat_rng);
        const Eigen::VectorXcd y = A * truth + noise;
        try {
            CampOptions opts;
            opts.tau = cfg.tau;
            opts.max_iters = cfg.max_iters;
            opts.track_mse = false;
            const SolverResult r = run_camp(A, y, nullptr, opts);
            mse[idx] = (r.x - truth).squaredNorm() / Nd;
            ok[idx] = 1;
        } catch (const NumericalError&) {
            ok[idx] = 0;
        }
    });

    UniversalityResult out;
    for (std::size_t i = 0; i < P; ++i)
        for (std::size_t o = 0; o + 1 < E; ++o) {
            UniversalityRow row;
            row.sigma = sigma[i];
            row.ensemble_a = cfg.base;
            row.ensemble_b = cfg.others[o];
            row.mse_a = mse[i * E];
            row.mse_b = mse[i * E + o + 1];
            row.ok_a = ok[i * E] != 0;
            row.ok_b = ok[i * E + o + 1] != 0;
            out.rows.push_back(row);
        }
    for (std::size_t o = 0; o + 1 < E; ++o) {
        UniversalityPairSummary s;
        s.ensemble_a = cfg.base;
        s.ensemble_b = cfg.others[o];
        double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0, d2 = 0, a2 = 0;
        int used = 0;
        for (std::size_t i = 0; i < P; ++i) {
            if (!ok[i * E] || !ok[i * E + o + 1]) continue;
            const double a = mse[i * E], b = mse[i * E + o + 1];
            sa += a;
            sb += b;
            saa += a * a;
            sbb += b * b;
            sab += a * b;
            d2 += (a - b) * (a - b);
            a2 += a * a;
            ++used;
        }
        s.rows_used = used;
        if (used > 1) {
            const double va = saa - sa * sa / used;
            const double vb = sbb - sb * sb / used;
            const double cov = sab - sa * sb / used;
            s.correlation = va > 0.0 && vb > 0.0 ? cov / std::sqrt(va * vb)
                                                 : (d2 == 0.0 ? 1.0 : 0.0);
        }
        s.paired_diff_norm = a2 > 0.0 ? std::sqrt(d2 / a2) : 0.0;
        out.summaries.push_back(s);
    }
    return out;
}

std::vector<SeVsCampRow> se_vs_camp(const SeVsCampConfig& cfg) {
    if (cfg.seeds < 1) throw std::domain_error("need at least one seed");
    if (cfg.t_max < 1) throw std::domain_error("t_max must be positive");
    SeParams params;
    params.delta = cfg.delta;
    params.rho = cfg.rho;
    params.sigma = cfg.sigma;
    params.tau = cfg.tau;
    params.signal = cfg.signal;
    validate(params);
    const SeTrajectory se = se_trajectory(params, cfg.t_max, 0.0);

    const auto S = static_cast<std::size_t>(cfg.seeds);
    const auto T = static_cast<std::size_t>(cfg.t_max);
    std::vector<std::vector<double>> traces(S);
    const int threads = resolve_threads(cfg.threads);
    parallel_for(S, threads, [&](std::size_t s) {
        InstanceSpec spec;
        spec.N = cfg.N;
        spec.delta = cfg.delta;
        spec.rho = cfg.rho;
        spec.sigma = cfg.sigma;
        spec.matrix = cfg.ensemble;
        spec.signal = cfg.signal;
        const Instance inst = make_instance(spec, cfg.master_seed, stream_key({3, s}));
        CampOptions opts;
        opts.tau = cfg.tau;
        opts.max_iters = cfg.t_max;
        opts.stop_tol = 0.0;  // full-length trace
        opts.track_mse = true;
        traces[s] = run_camp(inst, opts).mse_trace;
    });

    std::vector<SeVsCampRow> rows(T + 1);
    for (std::size_t t = 0; t <= T; ++t) {
        double avg = 0.0;
        for (std::size_t s = 0; s < S; ++s) avg += traces[s][t];
        rows[t] = {static_cast<int>(t), avg / static_cast<double>(S), se.m[t]};
    }
    return rows;
}

}  // namespace camplab
