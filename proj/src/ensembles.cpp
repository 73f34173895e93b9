#include "camplab/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace camplab {

std::string matrix_kind_name(MatrixKind kind) {
    switch (kind) {
        case MatrixKind::gaussian: return "gaussian";
        case MatrixKind::rademacher: return "rademacher";
        case MatrixKind::ternary: return "ternary";
    }
    throw std::logic_error("unreachable");
}

MatrixKind matrix_kind_from_name(const std::string& name) {
    if (name == "gaussian") return MatrixKind::gaussian;
    if (name == "rademacher") return MatrixKind::rademacher;
    if (name == "ternary") return MatrixKind::ternary;
    throw std::invalid_argument("unknown matrix kind: " + name);
}

namespace {

double ternary_component(double c, RngStream& rng) {
    const double u = rng.uniform();
    if (u < 1.0 / 3.0) return c;
    if (u < 2.0 / 3.0) return 0.0;
    return -c;
}

}  // namespace

Eigen::MatrixXcd sample_matrix(std::size_t n, std::size_t N, MatrixKind kind, RngStream& rng) {
    if (n == 0 || N == 0) throw std::invalid_argument("matrix dimensions must be positive");
    Eigen::MatrixXcd A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(N));
    const double comp_sd = std::sqrt(1.0 / (2.0 * static_cast<double>(n)));
    const double tern_c = std::sqrt(3.0 / (4.0 * static_cast<double>(n)));
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
        for (Eigen::Index a = 0; a < A.rows(); ++a) {
            double re = 0.0, im = 0.0;
            switch (kind) {
                case MatrixKind::gaussian:
                    re = comp_sd * rng.gaussian();
                    im = comp_sd * rng.gaussian();
                    break;
                case MatrixKind::rademacher:
                    re = rng.uniform() < 0.5 ? comp_sd : -comp_sd;
                    im = rng.uniform() < 0.5 ? comp_sd : -comp_sd;
                    break;
                case MatrixKind::ternary:
                    re = ternary_component(tern_c, rng);
                    im = ternary_component(tern_c, rng);
                    break;
            }
            A(a, j) = {re, im};
        }
    }
    return A;
}

Eigen::VectorXcd sample_signal(std::size_t N, std::size_t k, const SignalModel& model,
                               RngStream& rng) {
    if (k > N) throw std::invalid_argument("support size exceeds dimension");
    std::vector<std::size_t> idx(N);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.uniform_index(N - i);
        std::swap(idx[i], idx[j]);
    }
    std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(N));
    for (std::size_t i = 0; i < k; ++i)
        x(static_cast<Eigen::Index>(idx[i])) = sample_coeff(model, rng);
    return x;
}

Eigen::VectorXcd sample_noise(std::size_t n, double sigma, RngStream& rng) {
    Eigen::VectorXcd w(static_cast<Eigen::Index>(n));
    if (sigma == 0.0) {
        w.setZero();
        return w;
    }
    const double var = sigma * sigma;
    for (Eigen::Index a = 0; a < w.size(); ++a) w(a) = rng.circular_gaussian(var);
    return w;
}

Instance make_instance(const InstanceSpec& spec, std::uint64_t master_seed,
                       std::uint64_t stream_id) {
    if (!(spec.delta > 0.0) || spec.delta > 1.0) throw std::domain_error("delta must lie in (0, 1]");
    if (!(spec.rho >= 0.0) || spec.rho * spec.delta > 1.0)
        throw std::domain_error("rho*delta must lie in [0, 1]");
    if (!(spec.sigma >= 0.0)) throw std::domain_error("sigma must be nonnegative");
    const auto n = static_cast<std::size_t>(spec.delta * static_cast<double>(spec.N));
    const auto k = static_cast<std::size_t>(spec.rho * spec.delta * static_cast<double>(spec.N));
    if (n == 0) throw std::invalid_argument("delta*N rounds to zero rows");

    RngStream mat_rng(master_seed, stream_key({stream_id, 0}));
    RngStream sig_rng(master_seed, stream_key({stream_id, 1}));
    RngStream noise_rng(master_seed, stream_key({stream_id, 2}));

    Instance inst;
    inst.A = sample_matrix(n, spec.N, spec.matrix, mat_rng);
    inst.truth = sample_signal(spec.N, k, spec.signal, sig_rng);
    inst.y = inst.A * inst.truth + sample_noise(n, spec.sigma, noise_rng);
    inst.sigma = spec.sigma;
    inst.seed = master_seed;
    return inst;
}

}  // namespace camplab
