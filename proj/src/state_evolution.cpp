#include "camplab/state_evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "camplab/chi.hpp"
#include "camplab/errors.hpp"
#include "camplab/risk.hpp"

namespace camplab {

namespace {

// Precomputed pieces reused across many map evaluations.
struct MapEvaluator {
    SeParams p;
    AmplitudeGrid grid;
    double eps;
    double zero_risk;

    explicit MapEvaluator(const SeParams& params)
        : p(params),
          grid(amplitude_grid(params.signal)),
          eps(params.rho * params.delta),
          zero_risk(eta_zero_risk(params.tau)) {}

    double operator()(double m, double risk_tol) const {
        if (!(m >= 0.0)) throw std::domain_error("mse_map: m must be >= 0");
        const double npi = p.sigma * p.sigma + m / p.delta;
        if (npi == 0.0) return 0.0;
        const double nu = std::sqrt(npi);
        double signal_risk = 0.0;
        if (eps > 0.0) {
            for (std::size_t k = 0; k < grid.mu.size(); ++k) {
                signal_risk += grid.w[k] * soft_risk(grid.mu[k] / nu, p.tau, risk_tol);
            }
        }
        return npi * ((1.0 - eps) * zero_risk + eps * signal_risk);
    }
};

}  // namespace

void validate(const SeParams& p) {
    if (!(p.delta > 0.0) || !(p.delta <= 1.0)) {
        throw std::invalid_argument("SeParams: delta must be in (0, 1]");
    }
    if (!(p.rho >= 0.0) || !(p.rho * p.delta <= 1.0)) {
        throw std::invalid_argument("SeParams: rho must be >= 0 with rho * delta <= 1");
    }
    if (!(p.sigma >= 0.0)) throw std::invalid_argument("SeParams: sigma must be >= 0");
    if (!(p.tau > 0.0)) throw std::invalid_argument("SeParams: tau must be > 0");
}

double noise_plus_interference(const SeParams& p, double m) {
    return p.sigma * p.sigma + m / p.delta;
}

double mse_map(double m, const SeParams& p, double risk_tol) {
    validate(p);
    return MapEvaluator(p)(m, risk_tol);
}

double mse_map_derivative_at_zero(double delta, double rho, double tau) {
    if (!(delta > 0.0) || !(delta <= 1.0) || !(rho >= 0.0) || !(tau > 0.0)) {
        throw std::invalid_argument("mse_map_derivative_at_zero: bad parameters");
    }
    const double eps = rho * delta;
    return (eps * (1.0 + tau * tau) + (1.0 - eps) * eta_zero_risk(tau)) / delta;
}

double convergence_bound(double deriv0, double m0, int t) {
    if (!(deriv0 > 0.0) || !(deriv0 < 1.0)) {
        throw std::invalid_argument(
            "convergence_bound: no geometric envelope unless deriv0 is in (0, 1)");
    }
    if (!(m0 >= 0.0) || t < 0) {
        throw std::invalid_argument("convergence_bound: m0 must be >= 0 and t >= 0");
    }
    return m0 * std::pow(deriv0, t);
}

SeTrajectory se_trajectory(const SeParams& p, int t_max, double tol, double risk_tol) {
    validate(p);
    if (t_max < 0) throw std::invalid_argument("se_trajectory: t_max must be >= 0");
    const MapEvaluator psi(p);
    SeTrajectory out;
    double m = psi.eps * coeff_second_moment(p.signal);
    out.m.push_back(m);
    for (int t = 0; t < t_max; ++t) {
        const double next = psi(m, risk_tol);
        out.m.push_back(next);
        if (tol > 0.0 && std::abs(next - m) <= tol * std::max(m, 1.0)) {
            out.converged = true;
            m = next;
            break;
        }
        m = next;
    }
    out.npi.reserve(out.m.size());
    out.threshold.reserve(out.m.size());
    for (double v : out.m) {
        const double npi = noise_plus_interference(p, v);
        out.npi.push_back(npi);
        out.threshold.push_back(p.tau * std::sqrt(npi));
    }
    return out;
}

namespace {

// Iterates to the fixed point from one start; throws DivergenceError when a
// noise-free trajectory grows past the escape guard.
double iterate_to_fixed_point(const MapEvaluator& psi, double start, double guard,
                              double tol, int t_max, double risk_tol, int& iters) {
    double m = start;
    for (int t = 0; t < t_max; ++t) {
        const double next = psi(m, risk_tol);
        if (!std::isfinite(next)) {
            throw NumericalError("se_fixed_point: non-finite map value", t);
        }
        if (guard > 0.0 && next > guard && next > m) {
            throw DivergenceError("se_fixed_point: iterates escape upward, no finite fixed point",
                                  t);
        }
        if (std::abs(next - m) <= tol * std::max(m, 1e-12)) {
            iters = t + 1;
            return next;
        }
        m = next;
    }
    throw NumericalError("se_fixed_point: no convergence within iteration budget",
                         t_max);
}

}  // namespace

SeFixedPoint se_fixed_point(const SeParams& p, double tol, int t_max, double risk_tol) {
    validate(p);
    if (!(tol > 0.0)) throw std::invalid_argument("se_fixed_point: tol must be > 0");
    const MapEvaluator psi(p);
    const double m0 = psi.eps * coeff_second_moment(p.signal);
    const double guard = (p.sigma == 0.0 && m0 > 0.0) ? 1e6 * m0 : 0.0;

    SeFixedPoint out;
    out.m_star = iterate_to_fixed_point(psi, m0, guard, tol, t_max, risk_tol,
                                        out.iterations);

    // Verify the located point and its independence from the start.
    const double check = psi(out.m_star, risk_tol);
    const double scale = std::max(1.0, out.m_star);
    if (std::abs(check - out.m_star) > 100.0 * tol * scale) {
        throw NumericalError("se_fixed_point: fixed-point residual above tolerance",
                             out.iterations);
    }
    const double base = m0 + p.sigma * p.sigma + 1e-6;
    for (double factor : {0.037, 21.0}) {
        int extra_iters = 0;
        const double alt = iterate_to_fixed_point(psi, factor * base, guard, tol,
                                                  2 * t_max, risk_tol, extra_iters);
        if (std::abs(alt - out.m_star) > 1e-8 * scale) {
            throw NumericalError("se_fixed_point: starts disagree on the fixed point",
                                 out.iterations);
        }
    }
    out.npi_star = noise_plus_interference(p, out.m_star);
    return out;
}

}  // namespace camplab
