#pragma once

#include <Eigen/Dense>
#include <vector>

namespace camplab {

struct FistaOptions {
    double lambda = 0.1;
    int max_iters = 20000;
    double stop_tol = 1e-12;  // relative objective change
};

struct FistaResult {
    Eigen::VectorXcd x;
    int iterations = 0;
    bool converged = false;
    double objective = 0.0;
    std::vector<double> objective_trace;  // non-increasing (restart on increase)
};

// 0.5 |y - A x|^2 + lambda sum_j |x_j|.
double classo_objective(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y,
                        const Eigen::VectorXcd& x, double lambda);

// Penalty small enough to act as an equality-constrained solve: the
// penalized problem has solution 0 for lambda >= |A^* y|_inf, so scale that
// threshold down by 1e-6.
double basis_pursuit_lambda(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y);

// Largest squared singular value of A by 100 fixed power-iteration steps from
// a deterministic random start. Exposed for tests.
double squared_operator_norm(const Eigen::MatrixXcd& A);

// Accelerated proximal gradient on the penalized objective with step 1/L,
// L = 1.01 * squared_operator_norm(A). A momentum step that would increase
// the objective is replaced by a plain proximal step from the previous
// iterate (monotone restart), so the objective trace never increases.
FistaResult run_classo(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y,
                       const FistaOptions& opts);

}  // namespace camplab
