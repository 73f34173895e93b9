#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace camplab {

// Mixes a tuple of labels into a single stream id. Used to derive independent,
// reproducible substreams from (experiment, grid indices, trial).
std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts);

// Counter-style random stream: the sequence is a pure function of
// (master_seed, stream_id), independent of platform, thread schedule, and any
// other stream. All distributions are generated explicitly (no
// std::*_distribution, whose outputs are implementation-defined).
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform();

    // Standard normal via Box-Muller; consumes two uniforms per pair and
    // caches the second value.
    double gaussian();

    // Circular complex Gaussian with E|z|^2 = total_variance.
    std::complex<double> circular_gaussian(double total_variance);

    // Uniform integer on [0, n), unbiased by rejection. n must be > 0.
    std::uint64_t uniform_index(std::uint64_t n);

private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace camplab
