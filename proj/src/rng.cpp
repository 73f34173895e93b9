#include "camplab/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace camplab {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t state = 0x853C49E6748FEA9BULL;
    std::uint64_t key = splitmix64(state);
    for (std::uint64_t p : parts) {
        state ^= p + 0x9E3779B97F4A7C15ULL + (key << 6) + (key >> 2);
        key = splitmix64(state);
    }
    return key;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id) {
    std::uint64_t state = master_seed;
    (void)splitmix64(state);
    state ^= 0xD1B54A32D192ED03ULL * (stream_id + 1);
    const std::uint64_t seed = splitmix64(state);
    gen_.seed(seed);
}

std::uint64_t RngStream::next_u64() { return gen_(); }

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u1 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

std::complex<double> RngStream::circular_gaussian(double total_variance) {
    const double s = std::sqrt(0.5 * total_variance);
    const double re = gaussian();
    const double im = gaussian();
    return {s * re, s * im};
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be > 0");
    const std::uint64_t bound = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= bound);
    return x % n;
}

}  // namespace camplab
