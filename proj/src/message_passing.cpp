#include "camplab/message_passing.hpp"

#include <cmath>
#include <stdexcept>

#include "camplab/errors.hpp"
#include "camplab/soft_threshold.hpp"

namespace camplab {

MessagePassingResult run_message_passing(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y,
                                         const MessagePassingOptions& opts) {
    if (A.rows() != y.size()) throw std::invalid_argument("A and y have mismatched rows");
    if (A.cols() > 400) throw std::invalid_argument("per-edge messages are limited to N <= 400");
    if (!(opts.tau > 0.0)) throw std::domain_error("tau must be positive");
    const Eigen::Index n = A.rows();
    const Eigen::Index N = A.cols();

    // Z(a, l) = residual message a -> l, X(l, a) = estimate message l -> a.
    Eigen::MatrixXcd Z = y.replicate(1, N);
    Eigen::MatrixXcd X(N, n);
    MessagePassingResult res;
    res.x = Eigen::VectorXcd::Zero(N);

    for (int t = 0; t < opts.max_iters; ++t) {
        const double tau_t =
            opts.threshold_schedule.empty()
                ? opts.tau * std::sqrt((y - A * res.x).squaredNorm() / static_cast<double>(n))
                : opts.threshold_schedule[std::min<std::size_t>(
                      static_cast<std::size_t>(t), opts.threshold_schedule.size() - 1)];

        for (Eigen::Index l = 0; l < N; ++l) {
            std::complex<double> S = 0.0;
            for (Eigen::Index a = 0; a < n; ++a) S += std::conj(A(a, l)) * Z(a, l);
            for (Eigen::Index a = 0; a < n; ++a)
                X(l, a) = soft_threshold(S - std::conj(A(a, l)) * Z(a, l), tau_t);
            res.x(l) = soft_threshold(S, tau_t);
        }
        for (Eigen::Index a = 0; a < n; ++a) {
            std::complex<double> T = 0.0;
            for (Eigen::Index j = 0; j < N; ++j) T += A(a, j) * X(j, a);
            for (Eigen::Index l = 0; l < N; ++l) Z(a, l) = y(a) - T + A(a, l) * X(l, a);
        }
        if (!res.x.allFinite()) throw NumericalError("marginals stopped being finite", t);
        res.iterations = t + 1;
    }
    return res;
}

}  // namespace camplab
