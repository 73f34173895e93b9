#include "camplab/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "camplab/analysis.hpp"
#include "camplab/calibration.hpp"
#include "camplab/camp.hpp"
#include "camplab/csv.hpp"
#include "camplab/ensembles.hpp"
#include "camplab/errors.hpp"
#include "camplab/experiments.hpp"
#include "camplab/fista.hpp"
#include "camplab/instance_io.hpp"
#include "camplab/manifest.hpp"
#include "camplab/parallel.hpp"
#include "camplab/state_evolution.hpp"
#include "camplab/version.hpp"

namespace camplab {

namespace {

using nlohmann::json;

CLI::Option* tl(CLI::Option* o) {
    return o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

std::string render_scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number() || v.is_number_integer()) return v.dump();
    throw std::invalid_argument("config values must be scalars or arrays of scalars");
}

// Turns {"key": value} pairs from the --config file into --key=value tokens
// inserted right after the subcommand, so explicitly passed flags (parsed
// last) win.
std::vector<std::string> inject_config(const std::vector<std::string>& args,
                                       const std::set<std::string>& subcommands) {
    std::string path;
    std::size_t subcmd_pos = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& tok = args[i];
        if (subcmd_pos == args.size() && subcommands.count(tok)) subcmd_pos = i;
        if (tok == "--config") {
            if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a file path");
            path = args[i + 1];
        } else if (tok.rfind("--config=", 0) == 0) {
            path = tok.substr(9);
        }
    }
    if (path.empty()) return args;
    if (subcmd_pos == args.size())
        throw std::invalid_argument("--config requires a subcommand");
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    json doc = json::parse(in);  // throws with position info on bad JSON
    if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
    std::vector<std::string> out(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(subcmd_pos) + 1);
    for (const auto& [key, value] : doc.items()) {
        if (value.is_array())
            for (const auto& el : value) out.push_back("--" + key + "=" + render_scalar(el));
        else
            out.push_back("--" + key + "=" + render_scalar(value));
    }
    out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(subcmd_pos) + 1, args.end());
    return out;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    if (points < 1) throw std::domain_error("grid needs at least one point");
    if (points == 1) return {lo};
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    return g;
}

std::string join_args(int argc, const char* const* argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

SignalModel make_signal(const std::string& coeff, double amplitude) {
    SignalModel m;
    m.kind = coeff_kind_from_name(coeff);
    m.amplitude = amplitude;
    return m;
}

std::vector<MatrixKind> parse_kind_list(const std::string& csv) {
    std::vector<MatrixKind> kinds;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string tok = csv.substr(start, comma == std::string::npos ? std::string::npos
                                                                             : comma - start);
        if (!tok.empty()) kinds.push_back(matrix_kind_from_name(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (kinds.empty()) throw std::invalid_argument("empty matrix kind list");
    return kinds;
}

struct CommonOut {
    std::string out;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string config;  // recorded only; consumed by inject_config
};

void add_common(CLI::App* cmd, CommonOut* c, const std::string& default_out) {
    c->out = default_out;
    tl(cmd->add_option("--out", c->out, "output CSV path"));
    tl(cmd->add_option("--seed", c->seed, "master seed"));
    tl(cmd->add_option("--threads", c->threads, "worker threads (0 = auto)"));
    tl(cmd->add_option("--config", c->config, "JSON file of flag values"));
}

std::string fit_table_path(const std::string& cells_path) {
    const std::size_t dot = cells_path.rfind('.');
    if (dot == std::string::npos || cells_path.find('/', dot) != std::string::npos)
        return cells_path + "_fits.csv";
    return cells_path.substr(0, dot) + "_fits" + cells_path.substr(dot);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"complex-valued sparse recovery workbench"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    const std::string command_line = join_args(argc, argv);

    // ---- phase-curve ----------------------------------------------------
    auto* pc = app.add_subcommand("phase-curve", "recovery boundary rho_SE over a delta grid");
    struct {
        int points = 33;
        double lo = 0.05, hi = 0.95;
        bool asymptote = false;
        CommonOut c;
    } pcv;
    tl(pc->add_option("--delta-points", pcv.points, "grid size"));
    tl(pc->add_option("--delta-min", pcv.lo, "smallest delta"));
    tl(pc->add_option("--delta-max", pcv.hi, "largest delta"));
    pc->add_flag("--asymptote", pcv.asymptote, "append the small-delta asymptote column");
    add_common(pc, &pcv.c, "phase_curve.csv");
    pc->callback([&] {
        std::vector<std::string> header{"delta", "rho_se", "tau_star"};
        if (pcv.asymptote) header.push_back("asymptote");
        std::vector<std::vector<std::string>> rows;
        for (double d : linear_grid(pcv.lo, pcv.hi, pcv.points)) {
            const PhasePoint p = phase_transition(d);
            std::vector<std::string> row{csv_number(d), csv_number(p.rho_se),
                                         csv_number(p.tau_star)};
            if (pcv.asymptote)
                row.push_back(csv_number(d < 0.5 ? phase_transition_asymptote(d)
                                                 : std::numeric_limits<double>::quiet_NaN()));
            rows.push_back(std::move(row));
        }
        write_csv(pcv.c.out, header, rows);
        json cfg{{"delta-points", pcv.points}, {"delta-min", pcv.lo},  {"delta-max", pcv.hi},
                 {"asymptote", pcv.asymptote}, {"out", pcv.c.out}};
        write_manifest(pcv.c.out, command_line, cfg.dump(), pcv.c.seed, 1);
        std::cout << "wrote " << rows.size() << " rows to " << pcv.c.out << "\n";
    });

    // ---- minimax ---------------------------------------------------------
    auto* mm = app.add_subcommand("minimax", "minimax denoising risk over nonzero fraction");
    struct {
        int points = 50;
        double lo = 0.01, hi = 0.99;
        double eps = -1.0;
        CommonOut c;
    } mmv;
    tl(mm->add_option("--eps-points", mmv.points, "grid size"));
    tl(mm->add_option("--eps-min", mmv.lo, "smallest nonzero fraction"));
    tl(mm->add_option("--eps-max", mmv.hi, "largest nonzero fraction"));
    tl(mm->add_option("--eps", mmv.eps, "single nonzero fraction (overrides the grid)"));
    add_common(mm, &mmv.c, "minimax.csv");
    mm->callback([&] {
        const std::vector<double> grid =
            mmv.eps >= 0.0 ? std::vector<double>{mmv.eps} : linear_grid(mmv.lo, mmv.hi, mmv.points);
        std::vector<std::vector<std::string>> rows;
        for (double e : grid) {
            const MinimaxPoint p = minimax_risk(e);
            rows.push_back({csv_number(e), csv_number(p.value), csv_number(p.tau_star)});
        }
        write_csv(mmv.c.out, {"eps", "minimax_risk", "tau_star"}, rows);
        json cfg{{"eps-points", mmv.points}, {"eps-min", mmv.lo}, {"eps-max", mmv.hi},
                 {"eps", mmv.eps},           {"out", mmv.c.out}};
        write_manifest(mmv.c.out, command_line, cfg.dump(), mmv.c.seed, 1);
        std::cout << "wrote " << rows.size() << " rows to " << mmv.c.out << "\n";
    });

    // ---- ns ----------------------------------------------------------------
    auto* ns = app.add_subcommand("ns", "noise sensitivity at one (delta, rho)");
    struct {
        double delta = 0.25, rho = 0.1;
        CommonOut c;
    } nsv;
    tl(ns->add_option("--delta", nsv.delta, "undersampling ratio")->required());
    tl(ns->add_option("--rho", nsv.rho, "sparsity ratio")->required());
    add_common(ns, &nsv.c, "ns.csv");
    ns->callback([&] {
        const double eps = nsv.rho * nsv.delta;
        const MinimaxPoint m = minimax_risk(eps);
        const double sens = noise_sensitivity(nsv.delta, nsv.rho);
        const double boundary = rho_mse(nsv.delta);
        write_csv(nsv.c.out,
                  {"delta", "rho", "eps", "minimax_risk", "noise_sensitivity", "rho_mse"},
                  {{csv_number(nsv.delta), csv_number(nsv.rho), csv_number(eps),
                    csv_number(m.value), csv_number(sens), csv_number(boundary)}});
        json cfg{{"delta", nsv.delta}, {"rho", nsv.rho}, {"out", nsv.c.out}};
        write_manifest(nsv.c.out, command_line, cfg.dump(), nsv.c.seed, 1);
        std::cout << "noise_sensitivity=" << csv_number(sens) << "\n";
    });

    // ---- se ----------------------------------------------------------------
    auto* se = app.add_subcommand("se", "scalar MSE-map trajectory and fixed point");
    struct {
        double delta = 0.25, rho = 0.1, sigma = 0.1, tau = 2.0, amplitude = 1.0, tol = 1e-10;
        std::string coeff = "uniform_phase";
        int t_max = 10000;
        CommonOut c;
    } sev;
    tl(se->add_option("--delta", sev.delta, "undersampling ratio"));
    tl(se->add_option("--rho", sev.rho, "sparsity ratio"));
    tl(se->add_option("--sigma", sev.sigma, "noise level"));
    tl(se->add_option("--tau", sev.tau, "threshold multiplier"));
    tl(se->add_option("--coeff", sev.coeff, "nonzero coefficient law"));
    tl(se->add_option("--amplitude", sev.amplitude, "point-mass amplitude"));
    tl(se->add_option("--t-max", sev.t_max, "iteration budget"));
    tl(se->add_option("--tol", sev.tol, "stop tolerance (0 = run full budget)"));
    add_common(se, &sev.c, "se.csv");
    se->callback([&] {
        SeParams p;
        p.delta = sev.delta;
        p.rho = sev.rho;
        p.sigma = sev.sigma;
        p.tau = sev.tau;
        p.signal = make_signal(sev.coeff, sev.amplitude);
        const SeTrajectory traj = se_trajectory(p, sev.t_max, sev.tol);
        std::vector<std::vector<std::string>> rows;
        for (std::size_t t = 0; t < traj.m.size(); ++t)
            rows.push_back({csv_number(static_cast<double>(t)), csv_number(traj.m[t]),
                            csv_number(traj.npi[t]), csv_number(traj.threshold[t])});
        write_csv(sev.c.out, {"t", "m", "npi", "threshold"}, rows);
        json cfg{{"delta", sev.delta}, {"rho", sev.rho},     {"sigma", sev.sigma},
                 {"tau", sev.tau},     {"coeff", sev.coeff}, {"amplitude", sev.amplitude},
                 {"t-max", sev.t_max}, {"tol", sev.tol},     {"out", sev.c.out}};
        write_manifest(sev.c.out, command_line, cfg.dump(), sev.c.seed, 1);
        std::cout << "m_final=" << csv_number(traj.m.back())
                  << " converged=" << (traj.converged ? 1 : 0) << "\n";
    });

    // ---- solve ---------------------------------------------------------------
    auto* sv = app.add_subcommand("solve", "run a solver on one instance");
    struct {
        std::string instance, save_instance, solver = "camp";
        std::size_t N = 1000;
        double delta = 0.25, rho = 0.1, sigma = 0.0, amplitude = 1.0;
        std::string ensemble = "gaussian", coeff = "uniform_phase";
        std::uint64_t stream = 0;
        double tau = 2.0, lambda = -1.0, stop_tol = -1.0;
        int max_iters = -1;
        std::string onsager = "mean_field", npi_estimator = "residual_energy";
        CommonOut c;
    } svv;
    tl(sv->add_option("--instance", svv.instance, "load a saved instance instead of sampling"));
    tl(sv->add_option("--save-instance", svv.save_instance, "write the instance container here"));
    tl(sv->add_option("--solver", svv.solver, "camp | classo"));
    tl(sv->add_option("--N", svv.N, "signal length"));
    tl(sv->add_option("--delta", svv.delta, "undersampling ratio"));
    tl(sv->add_option("--rho", svv.rho, "sparsity ratio"));
    tl(sv->add_option("--sigma", svv.sigma, "noise level"));
    tl(sv->add_option("--ensemble", svv.ensemble, "matrix entry law"));
    tl(sv->add_option("--coeff", svv.coeff, "nonzero coefficient law"));
    tl(sv->add_option("--amplitude", svv.amplitude, "point-mass amplitude"));
    tl(sv->add_option("--stream", svv.stream, "instance stream id"));
    tl(sv->add_option("--tau", svv.tau, "threshold multiplier"));
    tl(sv->add_option("--lambda", svv.lambda, "penalty weight (default: small-penalty limit)"));
    tl(sv->add_option("--max-iters", svv.max_iters, "iteration cap"));
    tl(sv->add_option("--stop-tol", svv.stop_tol, "stop tolerance"));
    tl(sv->add_option("--onsager", svv.onsager, "mean_field | per_entry"));
    tl(sv->add_option("--npi-estimator", svv.npi_estimator, "residual_energy | rayleigh_median"));
    add_common(sv, &svv.c, "solution.csv");
    sv->callback([&] {
        Instance inst;
        if (!svv.instance.empty()) {
            inst = load_instance(svv.instance);
        } else {
            InstanceSpec spec;
            spec.N = svv.N;
            spec.delta = svv.delta;
            spec.rho = svv.rho;
            spec.sigma = svv.sigma;
            spec.matrix = matrix_kind_from_name(svv.ensemble);
            spec.signal = make_signal(svv.coeff, svv.amplitude);
            inst = make_instance(spec, svv.c.seed, svv.stream);
        }
        if (!svv.save_instance.empty()) save_instance(svv.save_instance, inst);

        Eigen::VectorXcd xhat;
        std::string note;
        if (svv.solver == "camp") {
            CampOptions opts;
            opts.tau = svv.tau;
            if (svv.max_iters > 0) opts.max_iters = svv.max_iters;
            if (svv.stop_tol >= 0.0) opts.stop_tol = svv.stop_tol;
            opts.onsager = svv.onsager == "per_entry" ? OnsagerMode::per_entry
                                                      : OnsagerMode::mean_field;
            if (svv.onsager != "per_entry" && svv.onsager != "mean_field")
                throw std::invalid_argument("unknown onsager mode: " + svv.onsager);
            if (svv.npi_estimator == "residual_energy")
                opts.npi_estimator = NpiEstimator::residual_energy;
            else if (svv.npi_estimator == "rayleigh_median")
                opts.npi_estimator = NpiEstimator::rayleigh_median;
            else
                throw std::invalid_argument("unknown npi estimator: " + svv.npi_estimator);
            const SolverResult r = run_camp(inst, opts);
            xhat = r.x;
            note = "iterations=" + std::to_string(r.iterations) +
                   " converged=" + std::to_string(r.converged ? 1 : 0);
        } else if (svv.solver == "classo") {
            FistaOptions opts;
            opts.lambda = svv.lambda >= 0.0 ? svv.lambda : basis_pursuit_lambda(inst.A, inst.y);
            if (svv.max_iters > 0) opts.max_iters = svv.max_iters;
            if (svv.stop_tol >= 0.0) opts.stop_tol = svv.stop_tol;
            const FistaResult r = run_classo(inst.A, inst.y, opts);
            xhat = r.x;
            note = "iterations=" + std::to_string(r.iterations) +
                   " converged=" + std::to_string(r.converged ? 1 : 0) +
                   " objective=" + csv_number(r.objective);
        } else {
            throw std::invalid_argument("unknown solver: " + svv.solver);
        }

        std::vector<std::vector<std::string>> rows;
        for (Eigen::Index j = 0; j < xhat.size(); ++j)
            rows.push_back({std::to_string(j), csv_number(xhat(j).real()),
                            csv_number(xhat(j).imag()), csv_number(std::abs(xhat(j)))});
        write_csv(svv.c.out, {"index", "re", "im", "abs"}, rows);
        json cfg{{"instance", svv.instance},
                 {"save-instance", svv.save_instance},
                 {"solver", svv.solver},
                 {"N", svv.N},
                 {"delta", svv.delta},
                 {"rho", svv.rho},
                 {"sigma", svv.sigma},
                 {"ensemble", svv.ensemble},
                 {"coeff", svv.coeff},
                 {"amplitude", svv.amplitude},
                 {"stream", svv.stream},
                 {"tau", svv.tau},
                 {"lambda", svv.lambda},
                 {"max-iters", svv.max_iters},
                 {"stop-tol", svv.stop_tol},
                 {"onsager", svv.onsager},
                 {"npi-estimator", svv.npi_estimator},
                 {"out", svv.c.out}};
        write_manifest(svv.c.out, command_line, cfg.dump(), svv.c.seed, 1);
        if (inst.truth.size() > 0) {
            const double rel = (xhat - inst.truth).norm() / inst.truth.norm();
            note += " rel_error=" + csv_number(rel);
        }
        std::cout << note << "\n";
    });

    // ---- mc-phase -------------------------------------------------------------
    auto* mc = app.add_subcommand("mc-phase", "empirical phase transition by Monte Carlo");
    struct {
        std::size_t N = 1000;
        int trials = 20, rho_points = 41, delta_points = 1, max_iters = 3000;
        double delta_min = 0.3, delta_max = 0.3, band = 0.2, tol = 1e-4, amplitude = 1.0;
        std::string solver = "camp", ensemble = "gaussian", coeff = "uniform_phase", fit_out;
        CommonOut c;
    } mcv;
    tl(mc->add_option("--N", mcv.N, "signal length"));
    tl(mc->add_option("--trials", mcv.trials, "repetitions per grid cell"));
    tl(mc->add_option("--delta-points", mcv.delta_points, "delta grid size"));
    tl(mc->add_option("--delta-min", mcv.delta_min, "smallest delta"));
    tl(mc->add_option("--delta-max", mcv.delta_max, "largest delta"));
    tl(mc->add_option("--rho-points", mcv.rho_points, "rho grid size"));
    tl(mc->add_option("--band", mcv.band, "rho half-band around the predicted boundary"));
    tl(mc->add_option("--tol", mcv.tol, "relative-error success threshold"));
    tl(mc->add_option("--solver", mcv.solver, "camp | classo"));
    tl(mc->add_option("--ensemble", mcv.ensemble, "matrix entry law"));
    tl(mc->add_option("--coeff", mcv.coeff, "nonzero coefficient law"));
    tl(mc->add_option("--amplitude", mcv.amplitude, "point-mass amplitude"));
    tl(mc->add_option("--max-iters", mcv.max_iters, "solver iteration cap"));
    tl(mc->add_option("--fit-out", mcv.fit_out, "fit table path (default: derived from --out)"));
    add_common(mc, &mcv.c, "mc_phase.csv");
    mc->callback([&] {
        PhaseExperimentConfig cfg;
        cfg.N = mcv.N;
        cfg.trials = mcv.trials;
        cfg.delta_grid = linear_grid(mcv.delta_min, mcv.delta_max, mcv.delta_points);
        cfg.rho_band_halfwidth = mcv.band;
        cfg.rho_points = mcv.rho_points;
        cfg.tol = mcv.tol;
        if (mcv.solver == "camp")
            cfg.solver = PhaseSolver::camp;
        else if (mcv.solver == "classo")
            cfg.solver = PhaseSolver::classo;
        else
            throw std::invalid_argument("unknown solver: " + mcv.solver);
        cfg.ensemble = matrix_kind_from_name(mcv.ensemble);
        cfg.signal = make_signal(mcv.coeff, mcv.amplitude);
        cfg.max_iters = mcv.max_iters;
        cfg.master_seed = mcv.c.seed;
        cfg.threads = mcv.c.threads;
        const PhaseExperimentResult res = empirical_phase_transition(cfg);

        std::vector<std::vector<std::string>> cell_rows;
        for (const PhaseCell& cell : res.cells) {
            bool converged = false;
            for (const PhaseFitRow& f : res.fits)
                if (f.delta == cell.delta) converged = f.fit.converged;
            cell_rows.push_back({csv_number(cell.delta), csv_number(cell.rho),
                                 std::to_string(cell.trials_run), std::to_string(cell.successes),
                                 std::to_string(converged ? 1 : 0)});
        }
        write_csv(mcv.c.out, {"delta", "rho", "trials", "successes", "rho_hat_flag"}, cell_rows);

        std::vector<std::vector<std::string>> fit_rows;
        for (const PhaseFitRow& f : res.fits)
            fit_rows.push_back({csv_number(f.delta), csv_number(f.fit.a), csv_number(f.fit.b),
                                csv_number(f.fit.rho_half), std::to_string(f.fit.converged ? 1 : 0),
                                std::to_string(f.solver_failures)});
        const std::string fit_path = mcv.fit_out.empty() ? fit_table_path(mcv.c.out) : mcv.fit_out;
        write_csv(fit_path, {"delta", "a", "b", "rho_half", "converged", "solver_failures"},
                  fit_rows);

        json jcfg{{"N", mcv.N},
                  {"trials", mcv.trials},
                  {"delta-points", mcv.delta_points},
                  {"delta-min", mcv.delta_min},
                  {"delta-max", mcv.delta_max},
                  {"rho-points", mcv.rho_points},
                  {"band", mcv.band},
                  {"tol", mcv.tol},
                  {"solver", mcv.solver},
                  {"ensemble", mcv.ensemble},
                  {"coeff", mcv.coeff},
                  {"amplitude", mcv.amplitude},
                  {"max-iters", mcv.max_iters},
                  {"fit-out", fit_path},
                  {"out", mcv.c.out},
                  {"threads", mcv.c.threads}};
        write_manifest(mcv.c.out, command_line, jcfg.dump(), mcv.c.seed,
                       resolve_threads(mcv.c.threads));
        for (const PhaseFitRow& f : res.fits)
            std::cout << "delta=" << csv_number(f.delta)
                      << " rho_hat=" << csv_number(f.fit.rho_half)
                      << " converged=" << (f.fit.converged ? 1 : 0)
                      << " solver_failures=" << f.solver_failures << "\n";
    });

    // ---- universality -----------------------------------------------------------
    auto* un = app.add_subcommand("universality", "paired-MSE matrix universality sweep");
    struct {
        std::size_t N = 1000;
        double delta = 0.25, rho = 0.1, tau = 2.0, sigma_min = 0.001, sigma_max = 0.1,
               amplitude = 1.0;
        int sigma_points = 50, max_iters = 1000;
        std::string base = "gaussian", others = "rademacher,ternary", coeff = "uniform_phase",
                    summary_out;
        CommonOut c;
    } unv;
    tl(un->add_option("--N", unv.N, "signal length"));
    tl(un->add_option("--delta", unv.delta, "undersampling ratio"));
    tl(un->add_option("--rho", unv.rho, "sparsity ratio"));
    tl(un->add_option("--tau", unv.tau, "threshold multiplier"));
    tl(un->add_option("--sigma-points", unv.sigma_points, "noise grid size"));
    tl(un->add_option("--sigma-min", unv.sigma_min, "smallest noise level"));
    tl(un->add_option("--sigma-max", unv.sigma_max, "largest noise level"));
    tl(un->add_option("--base", unv.base, "reference matrix law"));
    tl(un->add_option("--others", unv.others, "comma-separated comparison laws"));
    tl(un->add_option("--coeff", unv.coeff, "nonzero coefficient law"));
    tl(un->add_option("--amplitude", unv.amplitude, "point-mass amplitude"));
    tl(un->add_option("--max-iters", unv.max_iters, "solver iteration cap"));
    tl(un->add_option("--summary-out", unv.summary_out, "summary table path"));
    add_common(un, &unv.c, "universality.csv");
    un->callback([&] {
        UniversalityConfig cfg;
        cfg.N = unv.N;
        cfg.delta = unv.delta;
        cfg.rho = unv.rho;
        cfg.tau = unv.tau;
        cfg.sigma_points = unv.sigma_points;
        cfg.sigma_lo = unv.sigma_min;
        cfg.sigma_hi = unv.sigma_max;
        cfg.base = matrix_kind_from_name(unv.base);
        cfg.others = parse_kind_list(unv.others);
        cfg.signal = make_signal(unv.coeff, unv.amplitude);
        cfg.max_iters = unv.max_iters;
        cfg.master_seed = unv.c.seed;
        cfg.threads = unv.c.threads;
        const UniversalityResult res = universality_sweep(cfg);

        std::vector<std::vector<std::string>> rows;
        for (const UniversalityRow& r : res.rows)
            rows.push_back({csv_number(r.sigma), matrix_kind_name(r.ensemble_a),
                            matrix_kind_name(r.ensemble_b), csv_number(r.mse_a),
                            csv_number(r.mse_b), std::to_string(r.ok_a ? 1 : 0),
                            std::to_string(r.ok_b ? 1 : 0)});
        write_csv(unv.c.out,
                  {"sigma", "ensemble_a", "ensemble_b", "mse_a", "mse_b", "ok_a", "ok_b"}, rows);

        std::vector<std::vector<std::string>> sum_rows;
        for (const UniversalityPairSummary& s : res.summaries)
            sum_rows.push_back({matrix_kind_name(s.ensemble_a), matrix_kind_name(s.ensemble_b),
                                csv_number(s.correlation), csv_number(s.paired_diff_norm),
                                std::to_string(s.rows_used)});
        const std::string sum_path =
            unv.summary_out.empty() ? fit_table_path(unv.c.out) : unv.summary_out;
        write_csv(sum_path,
                  {"ensemble_a", "ensemble_b", "correlation", "paired_diff_norm", "rows_used"},
                  sum_rows);

        json jcfg{{"N", unv.N},
                  {"delta", unv.delta},
                  {"rho", unv.rho},
                  {"tau", unv.tau},
                  {"sigma-points", unv.sigma_points},
                  {"sigma-min", unv.sigma_min},
                  {"sigma-max", unv.sigma_max},
                  {"base", unv.base},
                  {"others", unv.others},
                  {"coeff", unv.coeff},
                  {"amplitude", unv.amplitude},
                  {"max-iters", unv.max_iters},
                  {"summary-out", sum_path},
                  {"out", unv.c.out},
                  {"threads", unv.c.threads}};
        write_manifest(unv.c.out, command_line, jcfg.dump(), unv.c.seed,
                       resolve_threads(unv.c.threads));
        for (const UniversalityPairSummary& s : res.summaries)
            std::cout << matrix_kind_name(s.ensemble_a) << " vs " << matrix_kind_name(s.ensemble_b)
                      << ": correlation=" << csv_number(s.correlation)
                      << " paired_diff_norm=" << csv_number(s.paired_diff_norm) << "\n";
    });

    // ---- se-vs-camp -----------------------------------------------------------
    auto* sc = app.add_subcommand("se-vs-camp", "per-iteration empirical MSE vs prediction");
    struct {
        std::size_t N = 2000;
        double delta = 0.25, rho = 0.1, sigma = 0.1, tau = 2.0, amplitude = 1.0;
        int t_max = 20, seeds = 10;
        std::string ensemble = "gaussian", coeff = "uniform_phase";
        CommonOut c;
    } scv;
    tl(sc->add_option("--N", scv.N, "signal length"));
    tl(sc->add_option("--delta", scv.delta, "undersampling ratio"));
    tl(sc->add_option("--rho", scv.rho, "sparsity ratio"));
    tl(sc->add_option("--sigma", scv.sigma, "noise level"));
    tl(sc->add_option("--tau", scv.tau, "threshold multiplier"));
    tl(sc->add_option("--t-max", scv.t_max, "iterations to trace"));
    tl(sc->add_option("--seeds", scv.seeds, "instances to average"));
    tl(sc->add_option("--ensemble", scv.ensemble, "matrix entry law"));
    tl(sc->add_option("--coeff", scv.coeff, "nonzero coefficient law"));
    tl(sc->add_option("--amplitude", scv.amplitude, "point-mass amplitude"));
    add_common(sc, &scv.c, "se_vs_camp.csv");
    sc->callback([&] {
        SeVsCampConfig cfg;
        cfg.N = scv.N;
        cfg.delta = scv.delta;
        cfg.rho = scv.rho;
        cfg.sigma = scv.sigma;
        cfg.tau = scv.tau;
        cfg.t_max = scv.t_max;
        cfg.seeds = scv.seeds;
        cfg.ensemble = matrix_kind_from_name(scv.ensemble);
        cfg.signal = make_signal(scv.coeff, scv.amplitude);
        cfg.master_seed = scv.c.seed;
        cfg.threads = scv.c.threads;
        const std::vector<SeVsCampRow> rows = se_vs_camp(cfg);
        std::vector<std::vector<std::string>> csv_rows;
        for (const SeVsCampRow& r : rows)
            csv_rows.push_back({std::to_string(r.t), csv_number(r.empirical_mse),
                                csv_number(r.se_mse)});
        write_csv(scv.c.out, {"t", "empirical_mse", "se_mse"}, csv_rows);
        json jcfg{{"N", scv.N},          {"delta", scv.delta},
                  {"rho", scv.rho},      {"sigma", scv.sigma},
                  {"tau", scv.tau},      {"t-max", scv.t_max},
                  {"seeds", scv.seeds},  {"ensemble", scv.ensemble},
                  {"coeff", scv.coeff},  {"amplitude", scv.amplitude},
                  {"out", scv.c.out},    {"threads", scv.c.threads}};
        write_manifest(scv.c.out, command_line, jcfg.dump(), scv.c.seed,
                       resolve_threads(scv.c.threads));
        std::cout << "wrote " << csv_rows.size() << " rows to " << scv.c.out << "\n";
    });

    // ---- calibrate -------------------------------------------------------------
    auto* cb = app.add_subcommand("calibrate", "map a threshold multiplier to a penalty weight");
    struct {
        double delta = 0.25, rho = 0.1, sigma = 0.1, tau = 2.0, amplitude = 1.0;
        std::string coeff = "uniform_phase", scale = "effective_noise";
        CommonOut c;
    } cbv;
    tl(cb->add_option("--delta", cbv.delta, "undersampling ratio"));
    tl(cb->add_option("--rho", cbv.rho, "sparsity ratio"));
    tl(cb->add_option("--sigma", cbv.sigma, "noise level"));
    tl(cb->add_option("--tau", cbv.tau, "threshold multiplier"));
    tl(cb->add_option("--coeff", cbv.coeff, "nonzero coefficient law"));
    tl(cb->add_option("--amplitude", cbv.amplitude, "point-mass amplitude"));
    tl(cb->add_option("--scale", cbv.scale, "effective_noise | fixed_point_mse"));
    add_common(cb, &cbv.c, "calibration.csv");
    cb->callback([&] {
        SeParams p;
        p.delta = cbv.delta;
        p.rho = cbv.rho;
        p.sigma = cbv.sigma;
        p.tau = cbv.tau;
        p.signal = make_signal(cbv.coeff, cbv.amplitude);
        CalibrationScale scale;
        if (cbv.scale == "effective_noise")
            scale = CalibrationScale::effective_noise;
        else if (cbv.scale == "fixed_point_mse")
            scale = CalibrationScale::fixed_point_mse;
        else
            throw std::invalid_argument("unknown scale: " + cbv.scale);
        const CalibrationResult r = calibrate_lambda(p, scale);
        write_csv(cbv.c.out,
                  {"tau", "lambda", "m_star", "npi_star", "onsager_expectation", "scale"},
                  {{csv_number(r.tau), csv_number(r.lambda), csv_number(r.m_star),
                    csv_number(r.npi_star), csv_number(r.onsager_expectation), cbv.scale}});
        json jcfg{{"delta", cbv.delta}, {"rho", cbv.rho},           {"sigma", cbv.sigma},
                  {"tau", cbv.tau},     {"coeff", cbv.coeff},       {"amplitude", cbv.amplitude},
                  {"scale", cbv.scale}, {"out", cbv.c.out}};
        write_manifest(cbv.c.out, command_line, jcfg.dump(), cbv.c.seed, 1);
        std::cout << "lambda=" << csv_number(r.lambda) << "\n";
    });

    // ---- parse and dispatch ------------------------------------------------------
    const std::set<std::string> names{"phase-curve", "minimax",      "ns",
                                      "se",          "solve",        "mc-phase",
                                      "universality", "se-vs-camp",  "calibrate"};
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        args = inject_config(args, names);
        std::vector<const char*> ptrs;
        ptrs.push_back(argc > 0 ? argv[0] : "camplab");
        for (const std::string& a : args) ptrs.push_back(a.c_str());
        app.parse(static_cast<int>(ptrs.size()), ptrs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace camplab
