#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "camplab/chi.hpp"
#include "camplab/errors.hpp"
#include "camplab/state_evolution.hpp"

using namespace camplab;

namespace {

SeParams base_params() {
    SeParams p;
    p.delta = 0.25;
    p.rho = 0.1;
    p.sigma = 0.1;
    p.tau = 2.0;
    p.signal.kind = CoeffKind::uniform_phase;
    return p;
}

}  // namespace

TEST_CASE("validate: accepts the domain boundary, rejects everything outside") {
    SeParams p = base_params();
    CHECK_NOTHROW(validate(p));
    p.delta = 1.0;
    p.rho = 1.0;  // rho * delta = 1 is allowed
    p.sigma = 0.0;
    CHECK_NOTHROW(validate(p));

    auto broken = [] { return base_params(); };
    SeParams q = broken();
    q.delta = 0.0;
    CHECK_THROWS_AS(validate(q), std::invalid_argument);
    q = broken();
    q.delta = 1.0 + 1e-12;
    CHECK_THROWS_AS(validate(q), std::invalid_argument);
    q = broken();
    q.rho = -0.1;
    CHECK_THROWS_AS(validate(q), std::invalid_argument);
    q = broken();
    q.delta = 0.5;
    q.rho = 2.1;  // rho * delta > 1
    CHECK_THROWS_AS(validate(q), std::invalid_argument);
    q = broken();
    q.sigma = -1e-9;
    CHECK_THROWS_AS(validate(q), std::invalid_argument);
    q = broken();
    q.tau = 0.0;
    CHECK_THROWS_AS(validate(q), std::invalid_argument);
    q = broken();
    q.tau = std::nan("");
    CHECK_THROWS_AS(validate(q), std::invalid_argument);
}

TEST_CASE("noise_plus_interference: sigma^2 + m/delta identity") {
    SeParams p = base_params();
    CHECK(noise_plus_interference(p, 0.0) == 0.1 * 0.1);
    CHECK(noise_plus_interference(p, 0.025) == doctest::Approx(0.01 + 0.1).epsilon(1e-15));
}

TEST_CASE("mse_map: sparse-free and noise-free limits") {
    // rho = 0 removes the signal term: Psi(0) = sigma^2 * eta_zero_risk(tau).
    SeParams p = base_params();
    p.rho = 0.0;
    p.sigma = 1.0;
    p.tau = 1.0;
    CHECK(mse_map(0.0, p) == doctest::Approx(0.08907385589078032).epsilon(1e-12));
    p.tau = 2.0;
    CHECK(mse_map(0.0, p) == doctest::Approx(0.001733500127388845).epsilon(1e-12));

    // sigma = 0 pins the origin for any sparsity.
    SeParams q = base_params();
    q.sigma = 0.0;
    CHECK(mse_map(0.0, q) == 0.0);

    CHECK_THROWS_AS(mse_map(-1e-12, q), std::domain_error);
}

TEST_CASE("mse_map_derivative_at_zero: frozen value and small-m slope agreement") {
    const double d0 = mse_map_derivative_at_zero(0.25, 0.1, 2.0);
    CHECK(d0 == doctest::Approx(0.5067606504968165).epsilon(1e-13));

    // At sigma = 0 the map is differentiable at 0 with slope d0; the
    // subleading term is O(sqrt(m)), so m = 1e-10 leaves ~1e-5 relative error.
    SeParams p = base_params();
    p.sigma = 0.0;
    const double m = 1e-10;
    CHECK(mse_map(m, p) / m == doctest::Approx(d0).epsilon(1e-4));

    CHECK_THROWS_AS(mse_map_derivative_at_zero(0.0, 0.1, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(mse_map_derivative_at_zero(0.25, -0.1, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(mse_map_derivative_at_zero(0.25, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("mse_map: increasing and concave in m") {
    SeParams p = base_params();
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(0.012 * i);
    std::vector<double> psi;
    for (double m : grid) psi.push_back(mse_map(m, p));
    for (std::size_t i = 1; i < psi.size(); ++i) CHECK(psi[i] > psi[i - 1]);
    // midpoint chord test: Psi((a+b)/2) >= (Psi(a)+Psi(b))/2
    for (std::size_t i = 0; i + 2 < psi.size(); i += 2) {
        const double mid = mse_map(0.5 * (grid[i] + grid[i + 2]), p);
        CHECK(mid >= 0.5 * (psi[i] + psi[i + 2]) - 1e-12);
    }
}

TEST_CASE("se_trajectory: structure, start, and monotone decay to the fixed point") {
    SeParams p = base_params();
    const SeTrajectory traj = se_trajectory(p, 10000, 1e-12);
    REQUIRE(traj.m.size() >= 2);
    CHECK(traj.npi.size() == traj.m.size());
    CHECK(traj.threshold.size() == traj.m.size());
    CHECK(traj.converged);

    // m[0] = eps * E|X|^2 = 0.025 * 1 for unit-modulus coefficients.
    CHECK(traj.m[0] == doctest::Approx(0.025).epsilon(1e-15));
    for (std::size_t t = 0; t + 1 < traj.m.size(); ++t) CHECK(traj.m[t + 1] < traj.m[t]);
    for (std::size_t t = 0; t < traj.m.size(); ++t) {
        CHECK(traj.npi[t] == noise_plus_interference(p, traj.m[t]));
        CHECK(traj.threshold[t] == p.tau * std::sqrt(traj.npi[t]));
    }
    CHECK(traj.m.back() == doctest::Approx(0.00229771415668801).epsilon(1e-8));

    // Gaussian coefficients double the second moment, hence the start.
    SeParams g = base_params();
    g.signal.kind = CoeffKind::complex_gaussian;
    CHECK(se_trajectory(g, 1, 0.0).m[0] == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("se_trajectory: tol = 0 runs the full budget, t_max = 0 returns the start") {
    SeParams p = base_params();
    const SeTrajectory full = se_trajectory(p, 17, 0.0);
    CHECK(full.m.size() == 18);
    CHECK(!full.converged);
    const SeTrajectory start_only = se_trajectory(p, 0, 1e-10);
    CHECK(start_only.m.size() == 1);
    CHECK(!start_only.converged);
    CHECK_THROWS_AS(se_trajectory(p, -1), std::invalid_argument);
}

TEST_CASE("se_trajectory: noise-free decay obeys the geometric envelope") {
    SeParams p = base_params();
    p.sigma = 0.0;
    const double d0 = mse_map_derivative_at_zero(p.delta, p.rho, p.tau);
    REQUIRE(d0 < 1.0);
    const SeTrajectory traj = se_trajectory(p, 60, 0.0);
    for (std::size_t t = 0; t < traj.m.size(); ++t) {
        const double bound = convergence_bound(d0, traj.m[0], static_cast<int>(t));
        CHECK(traj.m[t] <= bound * (1.0 + 1e-10));
    }
}

TEST_CASE("convergence_bound: closed form and domain") {
    CHECK(convergence_bound(0.8, 0.025, 5) == doctest::Approx(0.025 * std::pow(0.8, 5)));
    CHECK(convergence_bound(0.5, 1.0, 0) == 1.0);
    CHECK_THROWS_AS(convergence_bound(1.0, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(convergence_bound(0.0, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(convergence_bound(0.5, -1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(convergence_bound(0.5, 1.0, -1), std::invalid_argument);
}

TEST_CASE("se_fixed_point: frozen noisy fixed point and start independence") {
    SeParams p = base_params();
    const SeFixedPoint fp = se_fixed_point(p, 1e-12);
    CHECK(fp.m_star == doctest::Approx(0.00229771415668801).epsilon(1e-9));
    CHECK(fp.npi_star == doctest::Approx(0.019190856626752).epsilon(1e-9));
    CHECK(fp.npi_star == noise_plus_interference(p, fp.m_star));
    CHECK(fp.iterations > 0);

    // global attraction: hand-iterating from far above the signal energy
    // lands on the same point
    double m = 1.0;
    for (int t = 0; t < 400; ++t) m = mse_map(m, p);
    CHECK(m == doctest::Approx(fp.m_star).epsilon(1e-7));

    CHECK_THROWS_AS(se_fixed_point(p, 0.0), std::invalid_argument);
}

TEST_CASE("se_fixed_point: noise-free phase boundary in rho") {
    // tau tuned for delta = 0.25; the critical sparsity is rho ~ 0.34563.
    const double tau_star = 1.105438951872888;
    SeParams p = base_params();
    p.sigma = 0.0;
    p.tau = tau_star;

    p.rho = 0.2;  // below: exact recovery, fixed point at zero
    CHECK(mse_map_derivative_at_zero(p.delta, p.rho, p.tau) < 1.0);
    const SeFixedPoint below = se_fixed_point(p);
    CHECK(below.m_star <= 1e-8);

    p.rho = 0.5;  // above: contraction fails at zero but a finite plateau remains
    CHECK(mse_map_derivative_at_zero(p.delta, p.rho, p.tau) > 1.0);
    const SeFixedPoint above = se_fixed_point(p);
    CHECK(above.m_star > 1e-4);
    CHECK(above.m_star < 1.0);
}

TEST_CASE("se_fixed_point: thresholds too small to contract raise DivergenceError") {
    // eta_zero_risk(0.3) ~ 0.557 > delta = 0.25, so the noise-free map grows
    // without bound from any positive start.
    SeParams p = base_params();
    p.sigma = 0.0;
    p.tau = 0.3;
    CHECK(eta_zero_risk(p.tau) > p.delta);
    CHECK_THROWS_AS(se_fixed_point(p), DivergenceError);
}
