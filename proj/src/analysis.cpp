#include "camplab/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "camplab/chi.hpp"
#include "camplab/optimize.hpp"

namespace camplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_delta(double delta) {
    if (!(delta > 0.0) || delta > 1.0) throw std::domain_error("delta must lie in (0, 1]");
}

}  // namespace

double recoverable_rho(double tau, double delta) {
    check_delta(delta);
    if (tau < 0.0) throw std::domain_error("tau must be nonnegative");
    const double r0 = eta_zero_risk(tau);
    const double num = delta - r0;
    const double den = delta * (1.0 + tau * tau - r0);
    // den vanishes only at tau = 0, where r0 = 1: the ratio tends to 1 as
    // tau -> 0 when delta = 1 and to -inf when delta < 1.
    if (den == 0.0) return delta == 1.0 ? 1.0 : -kInf;
    return num / den;
}

PhasePoint phase_transition(double delta) {
    check_delta(delta);
    auto obj = [delta](double tau) { return recoverable_rho(tau, delta); };
    const ScalarOptimum best = scan_then_golden_max(obj, 0.0, 20.0, 513, 1e-10);
    return {best.value, best.x};
}

ParametricPoint phase_transition_parametric(double tau, ParametricVariant variant) {
    if (!(tau > 0.0)) throw std::domain_error("tau must be positive");
    const ChiPair c = chi_pair(tau);
    const double opt = 1.0 + tau * tau;
    const double rho = c.chi1 / (opt * c.chi1 - tau * c.chi2);
    const double num = 4.0 * opt * c.chi1 - 4.0 * tau * c.chi2;
    const double den = variant == ParametricVariant::consistent ? -2.0 * tau + 4.0 * c.chi1
                                                                : -2.0 * tau + 4.0 * c.chi2;
    return {num / den, rho};
}

double phase_transition_asymptote(double delta) {
    if (!(delta > 0.0) || delta >= 0.5) throw std::domain_error("asymptote needs delta in (0, 1/2)");
    return 1.0 / std::log(1.0 / (2.0 * delta));
}

MinimaxPoint minimax_risk(double eps) {
    if (!(eps >= 0.0) || eps > 1.0) throw std::domain_error("eps must lie in [0, 1]");
    if (eps == 0.0) return {0.0, kInf};
    if (eps == 1.0) return {1.0, 0.0};
    // Strictly convex in tau: d^2/dtau^2 = 2(1-eps) exp(-tau^2) + 2 eps > 0.
    auto obj = [eps](double tau) {
        return 2.0 * (1.0 - eps) * chi_pair(tau).chi2 + eps * (1.0 + tau * tau);
    };
    const ScalarOptimum best = golden_min(obj, 0.0, 30.0, 1e-10);
    return {best.value, best.x};
}

double rho_mse(double delta) {
    check_delta(delta);
    auto gap = [delta](double rho) { return minimax_risk(rho * delta).value - delta; };
    return bisect(gap, 0.0, 1.0 / delta, 1e-12);
}

double noise_sensitivity(double delta, double rho) {
    check_delta(delta);
    const double eps = rho * delta;
    if (!(eps >= 0.0) || eps > 1.0) throw std::domain_error("rho*delta must lie in [0, 1]");
    if (eps == 0.0) return 0.0;
    const double m = minimax_risk(eps).value;
    if (m >= delta) return kInf;
    return m / (1.0 - m / delta);
}

}  // namespace camplab
