#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "camplab/rng.hpp"
#include "camplab/signal_model.hpp"

namespace camplab {

// Sensing-matrix entry laws, all normalized so E|A_{aj}|^2 = 1/n. Components
// (real and imaginary) are sampled independently:
//   gaussian    N(0, 1/(2n)) per component
//   rademacher  +-sqrt(1/(2n)) per component
//   ternary     {+c, 0, -c} each with probability 1/3, c = sqrt(3/(4n))
enum class MatrixKind { gaussian, rademacher, ternary };

std::string matrix_kind_name(MatrixKind kind);
MatrixKind matrix_kind_from_name(const std::string& name);

// Entries sampled column by column, rows inner, so a fixed stream yields a
// fixed matrix regardless of caller.
Eigen::MatrixXcd sample_matrix(std::size_t n, std::size_t N, MatrixKind kind, RngStream& rng);

// Exactly k nonzero coordinates: support by partial Fisher-Yates over
// 0..N-1 (then sorted), values drawn per the coefficient law in ascending
// support order.
Eigen::VectorXcd sample_signal(std::size_t N, std::size_t k, const SignalModel& model,
                               RngStream& rng);

// Circular complex Gaussian noise with E|w_a|^2 = sigma^2.
Eigen::VectorXcd sample_noise(std::size_t n, double sigma, RngStream& rng);

struct Instance {
    Eigen::MatrixXcd A;      // n x N sensing matrix
    Eigen::VectorXcd y;      // n observations, y = A truth + noise
    Eigen::VectorXcd truth;  // planted N-vector with exactly k nonzeros
    double sigma = 0.0;
    std::uint64_t seed = 0;  // master seed the instance was drawn under
};

struct InstanceSpec {
    std::size_t N = 1000;
    double delta = 0.5;  // n = floor(delta N)
    double rho = 0.1;    // k = floor(rho delta N)
    double sigma = 0.0;
    MatrixKind matrix = MatrixKind::gaussian;
    SignalModel signal{};
};

// Draws matrix, signal, and noise from the three fixed substreams
// (stream_id, 0), (stream_id, 1), (stream_id, 2) of the master seed, so any
// one component can be re-drawn or shared across instances independently of
// the others.
Instance make_instance(const InstanceSpec& spec, std::uint64_t master_seed,
                       std::uint64_t stream_id);

}  // namespace camplab
