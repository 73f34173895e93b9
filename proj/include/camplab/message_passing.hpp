#pragma once

#include <Eigen/Dense>
#include <vector>

namespace camplab {

struct MessagePassingOptions {
    double tau = 2.0;
    int max_iters = 10;
    // Absolute thresholds per iteration (last entry reused); when empty the
    // threshold is tau * sqrt(|y - A x_t|^2 / n) from the current marginals.
    std::vector<double> threshold_schedule;
};

struct MessagePassingResult {
    Eigen::VectorXcd x;  // marginal estimates
    int iterations = 0;
};

// Full per-edge message passing (n x N messages each way), the O(nN)-state
// iteration the single-vector solver approximates. Kept for cross-checking on
// small problems; refuses N > 400.
MessagePassingResult run_message_passing(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y,
                                         const MessagePassingOptions& opts);

}  // namespace camplab
