#include "camplab/fista.hpp"

#include <cmath>
#include <stdexcept>

#include "camplab/errors.hpp"
#include "camplab/rng.hpp"
#include "camplab/soft_threshold.hpp"

namespace camplab {

double classo_objective(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y,
                        const Eigen::VectorXcd& x, double lambda) {
    return 0.5 * (y - A * x).squaredNorm() + lambda * x.cwiseAbs().sum();
}

double basis_pursuit_lambda(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y) {
    return 1e-6 * (A.adjoint() * y).cwiseAbs().maxCoeff();
}

double squared_operator_norm(const Eigen::MatrixXcd& A) {
    RngStream rng(12345, 0);
    Eigen::VectorXcd q(A.cols());
    for (Eigen::Index j = 0; j < q.size(); ++j) q(j) = rng.circular_gaussian(1.0);
    q.normalize();
    for (int it = 0; it < 100; ++it) {
        Eigen::VectorXcd w = A.adjoint() * (A * q);
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;  // started in the null space of a rank-0 map
        q = w / nw;
    }
    return (A * q).squaredNorm();
}

FistaResult run_classo(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y,
                       const FistaOptions& opts) {
    if (A.rows() != y.size()) throw std::invalid_argument("A and y have mismatched rows");
    if (!(opts.lambda >= 0.0)) throw std::domain_error("lambda must be nonnegative");
    const double L = 1.01 * squared_operator_norm(A);
    if (!(L > 0.0)) throw std::domain_error("operator norm is zero");
    const double step_tau = opts.lambda / L;

    FistaResult res;
    res.x = Eigen::VectorXcd::Zero(A.cols());
    Eigen::VectorXcd v = res.x;
    double tk = 1.0;
    double obj = classo_objective(A, y, res.x, opts.lambda);
    res.objective = obj;
    res.objective_trace.push_back(obj);

    Eigen::VectorXcd g(A.cols()), x_next(A.cols());
    auto prox_step = [&](const Eigen::VectorXcd& from) {
        g = A.adjoint() * (A * from - y);
        const Eigen::VectorXcd p = from - g / L;
        for (Eigen::Index j = 0; j < p.size(); ++j) x_next(j) = soft_threshold(p(j), step_tau);
    };

    for (int k = 0; k < opts.max_iters; ++k) {
        prox_step(v);
        double obj_next = classo_objective(A, y, x_next, opts.lambda);
        if (obj_next > obj) {
            // momentum overshoot: restart from the last accepted iterate
            tk = 1.0;
            prox_step(res.x);
            obj_next = classo_objective(A, y, x_next, opts.lambda);
        }
        if (!x_next.allFinite()) throw NumericalError("iterate stopped being finite", k);
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
        v = x_next + ((tk - 1.0) / t_next) * (x_next - res.x);
        const bool settled = std::abs(obj_next - obj) <= opts.stop_tol * std::max(1.0, std::abs(obj_next));
        res.x = x_next;
        obj = obj_next;
        tk = t_next;
        res.objective_trace.push_back(obj);
        res.iterations = k + 1;
        if (settled) {
            res.converged = true;
            break;
        }
    }
    res.objective = obj;
    return res;
}

}  // namespace camplab
