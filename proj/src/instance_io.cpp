#include "camplab/instance_io.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace camplab {

namespace {

constexpr char kMagic[8] = {'C', 'L', 'A', 'B', 'I', 'N', 'S', 'T'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kHasTruth = 1u << 0;

template <typename T>
void put(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw std::runtime_error("instance file truncated");
    return v;
}

void put_complex_rowmajor(std::ostream& out, const Eigen::MatrixXcd& M) {
    for (Eigen::Index a = 0; a < M.rows(); ++a)
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            put(out, M(a, j).real());
            put(out, M(a, j).imag());
        }
}

void get_complex_rowmajor(std::istream& in, Eigen::MatrixXcd& M) {
    for (Eigen::Index a = 0; a < M.rows(); ++a)
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            const double re = get<double>(in);
            const double im = get<double>(in);
            M(a, j) = {re, im};
        }
}

}  // namespace

void save_instance(const std::string& path, const Instance& inst) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(kMagic, sizeof kMagic);
        const bool has_truth = inst.truth.size() > 0;
        put(out, kVersion);
        put(out, has_truth ? kHasTruth : 0u);
        put(out, static_cast<std::uint64_t>(inst.A.rows()));
        put(out, static_cast<std::uint64_t>(inst.A.cols()));
        put(out, inst.seed);
        put(out, inst.sigma);
        put_complex_rowmajor(out, inst.A);
        put_complex_rowmajor(out, inst.y);
        if (has_truth) put_complex_rowmajor(out, inst.truth);
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw std::runtime_error(path + " is not an instance file");
    const auto version = get<std::uint32_t>(in);
    if (version != kVersion) throw std::runtime_error("unsupported instance file version");
    const auto flags = get<std::uint32_t>(in);
    const auto n = get<std::uint64_t>(in);
    const auto N = get<std::uint64_t>(in);

    Instance inst;
    inst.seed = get<std::uint64_t>(in);
    inst.sigma = get<double>(in);
    inst.A.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(N));
    get_complex_rowmajor(in, inst.A);
    Eigen::MatrixXcd col(static_cast<Eigen::Index>(n), 1);
    get_complex_rowmajor(in, col);
    inst.y = col.col(0);
    if (flags & kHasTruth) {
        Eigen::MatrixXcd t(static_cast<Eigen::Index>(N), 1);
        get_complex_rowmajor(in, t);
        inst.truth = t.col(0);
    }
    return inst;
}

}  // namespace camplab
