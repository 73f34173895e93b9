#include "camplab/camp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "camplab/errors.hpp"
#include "camplab/soft_threshold.hpp"

namespace camplab {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

double median_of(std::vector<double>& v) {
    const std::size_t n = v.size();
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (n % 2 == 1) return *mid;
    const double hi = *mid;
    const double lo = *std::max_element(v.begin(), mid);
    return 0.5 * (lo + hi);
}

}  // namespace

double estimate_npi(const Eigen::VectorXcd& z, NpiEstimator estimator) {
    const auto n = static_cast<double>(z.size());
    if (z.size() == 0) return 0.0;
    if (estimator == NpiEstimator::residual_energy) return z.squaredNorm() / n;
    std::vector<double> mod(static_cast<std::size_t>(z.size()));
    for (Eigen::Index a = 0; a < z.size(); ++a) mod[static_cast<std::size_t>(a)] = std::abs(z(a));
    const double med = median_of(mod);
    return med * med / kLn2;
}

SolverResult run_camp(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y,
                      const Eigen::VectorXcd* truth, const CampOptions& opts) {
    if (A.rows() != y.size()) throw std::invalid_argument("A and y have mismatched rows");
    if (truth && truth->size() != A.cols())
        throw std::invalid_argument("truth length does not match A columns");
    if (!(opts.tau > 0.0)) throw std::domain_error("tau must be positive");
    if (!(opts.stop_tol >= 0.0)) throw std::domain_error("stop_tol must be nonnegative");
    if (!A.allFinite() || !y.allFinite()) {
        throw NumericalError("inputs are not finite", 0);
    }

    const Eigen::Index n = A.rows();
    const Eigen::Index N = A.cols();
    const auto Nd = static_cast<double>(N);

    SolverResult res;
    res.x = Eigen::VectorXcd::Zero(N);
    Eigen::VectorXcd z = y;
    res.residual_norm_trace.push_back(z.norm());
    const bool mse = opts.track_mse && truth != nullptr;
    if (mse) res.mse_trace.push_back(truth->squaredNorm() / Nd);

    Eigen::VectorXcd u(N), x_next(N), z_next(n);
    Eigen::VectorXd c1(N);    // Re d eta/d u  (the d u-derivative is real)
    Eigen::VectorXcd c2(N);   // d eta / d conj(u)
    for (int t = 0; t < opts.max_iters; ++t) {
        const double npi_hat = estimate_npi(z, opts.npi_estimator);
        res.npi_trace.push_back(npi_hat);
        const double tau_t =
            opts.threshold_schedule.empty()
                ? opts.tau * std::sqrt(npi_hat)
                : opts.threshold_schedule[std::min<std::size_t>(
                      static_cast<std::size_t>(t), opts.threshold_schedule.size() - 1)];

        u = res.x + A.adjoint() * z;
        for (Eigen::Index j = 0; j < N; ++j) x_next(j) = soft_threshold(u(j), tau_t);
        if (!x_next.allFinite()) throw NumericalError("estimate stopped being finite", t);

        if (opts.onsager == OnsagerMode::mean_field) {
            double b = 0.0;
            for (Eigen::Index j = 0; j < N; ++j) {
                const double a = std::abs(u(j));
                if (a > tau_t) b += 2.0 - tau_t / a;
            }
            b /= 2.0 * static_cast<double>(n);
            z_next = y - A * x_next + b * z;
        } else {
            for (Eigen::Index j = 0; j < N; ++j) {
                const SoftThresholdJacobian jac = soft_threshold_jacobian(u(j), tau_t, 0.0);
                c1(j) = 0.5 * (jac.d1_re + jac.d2_im);
                c2(j) = {0.5 * (jac.d1_re - jac.d2_im), jac.d1_im};
            }
            Eigen::VectorXd s1 = Eigen::VectorXd::Zero(n);
            Eigen::VectorXcd s2 = Eigen::VectorXcd::Zero(n);
            for (Eigen::Index j = 0; j < N; ++j) {
                if (c1(j) == 0.0 && c2(j) == std::complex<double>{0.0, 0.0}) continue;
                for (Eigen::Index a = 0; a < n; ++a) {
                    s1(a) += std::norm(A(a, j)) * c1(j);
                    s2(a) += A(a, j) * A(a, j) * c2(j);
                }
            }
            const Eigen::VectorXcd Ax = A * x_next;
            for (Eigen::Index a = 0; a < n; ++a)
                z_next(a) = y(a) - Ax(a) + z(a) * s1(a) + std::conj(z(a)) * s2(a);
        }
        if (!z_next.allFinite()) throw NumericalError("residual stopped being finite", t);

        const double rel_change = (x_next - res.x).norm() / std::max(res.x.norm(), 1.0);
        res.x.swap(x_next);
        z.swap(z_next);
        res.residual_norm_trace.push_back(z.norm());
        if (mse) res.mse_trace.push_back((res.x - *truth).squaredNorm() / Nd);
        res.iterations = t + 1;
        if (opts.stop_tol > 0.0 && rel_change < opts.stop_tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

SolverResult run_camp(const Instance& inst, const CampOptions& opts) {
    const Eigen::VectorXcd* truth = inst.truth.size() > 0 ? &inst.truth : nullptr;
    return run_camp(inst.A, inst.y, truth, opts);
}

}  // namespace camplab
