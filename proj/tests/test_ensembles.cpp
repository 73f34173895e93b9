#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>
#include <vector>

#include "camplab/ensembles.hpp"
#include "camplab/instance_io.hpp"
#include "camplab/rng.hpp"
#include "camplab/signal_model.hpp"

using namespace camplab;

TEST_CASE("RngStream: reproducible, stream-separated, uniform in range") {
    RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t va = a.next_u64();
        CHECK(va == b.next_u64());
        differs_c |= (va != c.next_u64());
        differs_d |= (va != d.next_u64());
    }
    CHECK(differs_c);
    CHECK(differs_d);

    RngStream u(1, 0);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t k = u.uniform_index(13);
        CHECK(k < 13);
    }
    CHECK_THROWS_AS(u.uniform_index(0), std::invalid_argument);

    // key order matters and the key map is not trivially colliding
    CHECK(stream_key({1, 2, 3}) != stream_key({3, 2, 1}));
    CHECK(stream_key({1, 2, 3}) != stream_key({1, 2, 4}));
    CHECK(stream_key({0}) != stream_key({0, 0}));
}

TEST_CASE("RngStream: gaussian and circular_gaussian moments") {
    RngStream rng(2024, 0);
    const int kDraws = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < kDraws; ++i) {
        const double g = rng.gaussian();
        sum += g;
        sum2 += g * g;
    }
    const double mean = sum / kDraws;
    const double var = sum2 / kDraws - mean * mean;
    CHECK(std::abs(mean) < 3.0 / std::sqrt(double(kDraws)));           // se(mean) = 1/sqrt(n)
    CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / double(kDraws)));  // se(var) ~ sqrt(2/n)

    double e2 = 0.0;
    std::complex<double> zmean = 0.0;
    for (int i = 0; i < kDraws; ++i) {
        const std::complex<double> z = rng.circular_gaussian(0.36);
        zmean += z;
        e2 += std::norm(z);
    }
    CHECK(std::abs(zmean) / kDraws < 3.0 * 0.6 / std::sqrt(double(kDraws)));
    CHECK(e2 / kDraws == doctest::Approx(0.36).epsilon(0.02));
}

TEST_CASE("matrix kinds: names round-trip; unknown names rejected") {
    for (MatrixKind kind : {MatrixKind::gaussian, MatrixKind::rademacher, MatrixKind::ternary}) {
        CHECK(matrix_kind_from_name(matrix_kind_name(kind)) == kind);
    }
    CHECK_THROWS_AS(matrix_kind_from_name("fourier"), std::invalid_argument);
}

TEST_CASE("sample_matrix: per-entry second moment is 1/n for every kind") {
    const std::size_t n = 80, N = 250;
    for (MatrixKind kind : {MatrixKind::gaussian, MatrixKind::rademacher, MatrixKind::ternary}) {
        RngStream rng(5, static_cast<std::uint64_t>(kind));
        const Eigen::MatrixXcd A = sample_matrix(n, N, kind, rng);
        REQUIRE(A.rows() == Eigen::Index(n));
        REQUIRE(A.cols() == Eigen::Index(N));
        const double m2 = A.squaredNorm() / double(n * N);
        // |A_ij|^2 has variance <= 2/n^2, so se <= sqrt(2)/(n sqrt(nN))
        CHECK(m2 == doctest::Approx(1.0 / double(n)).epsilon(0.02));
        // the entry mean has E|mean|^2 = 1/(n^2 N); allow 3 standard deviations
        CHECK(std::abs(A.sum()) / double(n * N) < 3.0 / (double(n) * std::sqrt(double(N))));
    }
}

TEST_CASE("sample_matrix: rademacher has constant modulus, ternary the three-point law") {
    const std::size_t n = 50, N = 100;
    RngStream r1(9, 1);
    const Eigen::MatrixXcd R = sample_matrix(n, N, MatrixKind::rademacher, r1);
    const double comp = std::sqrt(1.0 / (2.0 * double(n)));
    for (Eigen::Index j = 0; j < R.size(); ++j) {
        CHECK(std::abs(std::abs(R(j).real()) - comp) < 1e-15);
        CHECK(std::abs(std::abs(R(j).imag()) - comp) < 1e-15);
    }

    RngStream r2(9, 2);
    const Eigen::MatrixXcd T = sample_matrix(n, N, MatrixKind::ternary, r2);
    const double c = std::sqrt(3.0 / (4.0 * double(n)));
    int zeros = 0;
    for (Eigen::Index j = 0; j < T.size(); ++j) {
        for (double comp_val : {T(j).real(), T(j).imag()}) {
            const bool is_zero = comp_val == 0.0;
            const bool is_atom = std::abs(std::abs(comp_val) - c) < 1e-15;
            CHECK((is_zero || is_atom));
            zeros += is_zero ? 1 : 0;
        }
    }
    const double zero_frac = double(zeros) / double(2 * T.size());
    CHECK(zero_frac == doctest::Approx(1.0 / 3.0).epsilon(0.05));
}

TEST_CASE("sample_signal: exactly k nonzeros, law-specific moduli, uniform support") {
    SignalModel up;  // unit modulus
    RngStream rng(11, 0);
    const Eigen::VectorXcd x = sample_signal(500, 40, up, rng);
    REQUIRE(x.size() == 500);
    int nnz = 0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (x(j) != std::complex<double>(0.0, 0.0)) {
            ++nnz;
            CHECK(std::abs(x(j)) == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
    CHECK(nnz == 40);

    SignalModel pm;
    pm.kind = CoeffKind::point_mass;
    pm.amplitude = 2.5;
    RngStream rng2(11, 1);
    const Eigen::VectorXcd xp = sample_signal(100, 10, pm, rng2);
    for (Eigen::Index j = 0; j < xp.size(); ++j) {
        if (xp(j) != std::complex<double>(0.0, 0.0)) {
            CHECK(std::abs(xp(j)) == doctest::Approx(2.5).epsilon(1e-14));
        }
    }

    // support is (distribution-)uniform: mean support index near (N-1)/2
    double mean_idx = 0.0;
    const int reps = 300;
    for (int rep = 0; rep < reps; ++rep) {
        RngStream r(77, static_cast<std::uint64_t>(rep));
        const Eigen::VectorXcd s = sample_signal(200, 5, up, r);
        for (Eigen::Index j = 0; j < s.size(); ++j) {
            if (s(j) != std::complex<double>(0.0, 0.0)) mean_idx += double(j);
        }
    }
    mean_idx /= double(reps * 5);
    // se = sqrt(N^2/12 / (reps k)) ~ 1.5
    CHECK(mean_idx == doctest::Approx(99.5).epsilon(0.05));

    CHECK_THROWS_AS(sample_signal(10, 11, up, rng), std::invalid_argument);

    // k = 0 and k = N are legal edges
    RngStream r0(1, 1);
    CHECK(sample_signal(10, 0, up, r0).isZero(0.0));
    const Eigen::VectorXcd full = sample_signal(10, 10, up, r0);
    for (Eigen::Index j = 0; j < full.size(); ++j) CHECK(std::abs(full(j)) > 0.0);
}

TEST_CASE("coeff_second_moment: closed forms match Monte Carlo") {
    std::vector<SignalModel> models(5);
    models[0].kind = CoeffKind::uniform_phase;
    models[1].kind = CoeffKind::unit_real;
    models[2].kind = CoeffKind::complex_gaussian;
    models[3].kind = CoeffKind::uniform_square;
    models[4].kind = CoeffKind::point_mass;
    models[4].amplitude = 3.0;
    const std::vector<double> expected = {1.0, 1.0, 2.0, 2.0 / 3.0, 9.0};

    for (std::size_t i = 0; i < models.size(); ++i) {
        CHECK(coeff_second_moment(models[i]) == doctest::Approx(expected[i]).epsilon(1e-14));
        RngStream rng(31, static_cast<std::uint64_t>(i));
        double acc = 0.0;
        const int kDraws = 200000;
        for (int t = 0; t < kDraws; ++t) acc += std::norm(sample_coeff(models[i], rng));
        CHECK(acc / kDraws == doctest::Approx(expected[i]).epsilon(0.02));
    }
}

TEST_CASE("amplitude_grid: probability weights and matched second moment") {
    for (CoeffKind kind : {CoeffKind::uniform_phase, CoeffKind::unit_real,
                           CoeffKind::complex_gaussian, CoeffKind::uniform_square,
                           CoeffKind::point_mass}) {
        SignalModel model;
        model.kind = kind;
        model.amplitude = 1.7;
        const AmplitudeGrid grid = amplitude_grid(model);
        REQUIRE(!grid.mu.empty());
        REQUIRE(grid.mu.size() == grid.w.size());
        double wsum = 0.0, m2 = 0.0;
        for (std::size_t k = 0; k < grid.mu.size(); ++k) {
            CHECK(grid.mu[k] >= 0.0);
            CHECK(grid.w[k] > 0.0);
            wsum += grid.w[k];
            m2 += grid.w[k] * grid.mu[k] * grid.mu[k];
        }
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(m2 == doctest::Approx(coeff_second_moment(model)).epsilon(1e-8));
    }
    // constant-modulus laws collapse to a single atom
    SignalModel up;
    CHECK(amplitude_grid(up).mu.size() == 1);
}

TEST_CASE("sample_noise: silent at sigma = 0, calibrated energy otherwise") {
    RngStream rng(3, 0);
    CHECK(sample_noise(64, 0.0, rng).isZero(0.0));
    const std::size_t n = 50000;
    const Eigen::VectorXcd w = sample_noise(n, 0.5, rng);
    CHECK(w.squaredNorm() / double(n) == doctest::Approx(0.25).epsilon(0.03));
}

TEST_CASE("make_instance: shapes, reproducibility, exact noise-free consistency") {
    InstanceSpec spec;
    spec.N = 400;
    spec.delta = 0.25;
    spec.rho = 0.2;
    spec.sigma = 0.0;
    const Instance inst = make_instance(spec, 99, 5);
    CHECK(inst.A.rows() == 100);  // floor(0.25 * 400)
    CHECK(inst.A.cols() == 400);
    CHECK(inst.y.size() == 100);
    CHECK(inst.truth.size() == 400);
    CHECK(inst.sigma == 0.0);
    CHECK(inst.seed == 99);
    int nnz = 0;
    for (Eigen::Index j = 0; j < inst.truth.size(); ++j) {
        nnz += inst.truth(j) != std::complex<double>(0.0, 0.0) ? 1 : 0;
    }
    CHECK(nnz == 20);  // floor(0.2 * 0.25 * 400)
    CHECK((inst.y - inst.A * inst.truth).norm() == 0.0);  // sigma = 0: exact equality

    const Instance again = make_instance(spec, 99, 5);
    CHECK(inst.A == again.A);
    CHECK(inst.y == again.y);
    CHECK(inst.truth == again.truth);

    const Instance other = make_instance(spec, 99, 6);
    CHECK(inst.A != other.A);

    spec.sigma = 0.3;
    const Instance noisy = make_instance(spec, 99, 5);
    CHECK(noisy.A == inst.A);        // matrix substream independent of sigma
    CHECK(noisy.truth == inst.truth);
    CHECK((noisy.y - noisy.A * noisy.truth).norm() > 0.0);

    // out-of-domain parameter values are domain errors...
    InstanceSpec bad = spec;
    bad.delta = 0.0;
    CHECK_THROWS_AS(make_instance(bad, 1, 0), std::domain_error);
    bad = spec;
    bad.delta = 1.5;
    CHECK_THROWS_AS(make_instance(bad, 1, 0), std::domain_error);
    bad = spec;
    bad.rho = 5.0;  // rho * delta > 1
    CHECK_THROWS_AS(make_instance(bad, 1, 0), std::domain_error);
    bad = spec;
    bad.sigma = -0.1;
    CHECK_THROWS_AS(make_instance(bad, 1, 0), std::domain_error);
    // ...while a shape that rounds to zero rows is an invalid argument
    bad = spec;
    bad.N = 3;  // floor(0.25 * 3) = 0 rows
    CHECK_THROWS_AS(make_instance(bad, 1, 0), std::invalid_argument);
}

TEST_CASE("instance_io: bit-exact round trip and corruption detection") {
    InstanceSpec spec;
    spec.N = 60;
    spec.delta = 0.5;
    spec.rho = 0.2;
    spec.sigma = 0.25;
    const Instance inst = make_instance(spec, 7, 3);

    const std::string path = "roundtrip_instance.bin";
    save_instance(path, inst);
    const Instance back = load_instance(path);
    CHECK(back.A == inst.A);
    CHECK(back.y == inst.y);
    CHECK(back.truth == inst.truth);
    CHECK(back.sigma == inst.sigma);
    CHECK(back.seed == inst.seed);

    // truncation detected
    {
        std::ifstream in(path, std::ios::binary);
        std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
        std::ofstream out("truncated_instance.bin", std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 2));
    }
    CHECK_THROWS_AS(load_instance("truncated_instance.bin"), std::runtime_error);

    // foreign header detected
    {
        std::ofstream out("bad_magic_instance.bin", std::ios::binary);
        out << "NOTMAGIC" << std::string(64, '\0');
    }
    CHECK_THROWS_AS(load_instance("bad_magic_instance.bin"), std::runtime_error);
    CHECK_THROWS_AS(load_instance("missing_instance.bin"), std::runtime_error);

    std::remove(path.c_str());
    std::remove("truncated_instance.bin");
    std::remove("bad_magic_instance.bin");
}
