#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "kpp/floquet.hpp"
#include "kpp/kernels.hpp"
#include "kpp/pde.hpp"
#include "kpp/speed.hpp"
#include "kpp/sweep.hpp"

using namespace kpp;

// The OpenMP kernels must reproduce their serial references bitwise.

TEST_CASE("logistic kernel: serial and openmp agree bitwise") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> val(0.0, 1.0), rate(0.0, 512.0);
    std::vector<double> u(10000), g(10000);
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = val(rng);
        g[i] = (i % 7 == 0) ? 1.0 : std::exp(rate(rng) * 0.01);
    }
    std::vector<double> a = u, b = u;
    kernels::logistic_update_serial(a, g);
    kernels::logistic_update_omp(b, g);
    CHECK(a == b);
}

TEST_CASE("diffusion rhs kernel: serial and openmp agree bitwise") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> val(0.0, 1.0);
    std::vector<double> u(8192);
    for (double& x : u) x = val(rng);
    for (Boundary bc : {Boundary::dirichlet_zero, Boundary::neumann}) {
        std::vector<double> a(u.size()), b(u.size());
        kernels::diffusion_rhs_serial(u, a, 37.5, bc);
        kernels::diffusion_rhs_omp(u, b, 37.5, bc);
        CHECK(a == b);
    }
}

TEST_CASE("convolution kernel: serial and openmp agree bitwise") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> val(0.0, 1.0);
    std::vector<double> u(4096), taps(129);
    for (double& x : u) x = val(rng);
    for (double& x : taps) x = val(rng);
    std::vector<double> a(u.size()), b(u.size());
    kernels::convolve_serial(u, taps, 64, a);
    kernels::convolve_omp(u, taps, 64, b);
    CHECK(a == b);
}

TEST_CASE("dispersion curve: executor does not change the result") {
    const auto two = PeriodicCoefficient::make_atoms(1.0, {{0.3, 0.7}, {0.55, 0.3}});
    std::vector<double> lambdas;
    for (int i = 1; i <= 24; ++i) lambdas.push_back(0.1 * i);
    const DispersionCurve s = dispersion_curve(two, lambdas, Exec::serial);
    const DispersionCurve p = dispersion_curve(two, lambdas, Exec::openmp);
    CHECK(s.mus == p.mus);
}

TEST_CASE("simulation: executor does not change the trajectory") {
    SimulationConfig cfg;
    cfg.grid_dx = 1.0 / 256.0;
    cfg.domain_half_width = 20.0;
    cfg.t_end = 1.0;
    const auto b = PeriodicCoefficient::make_delta_comb(1.0, 1.0);
    cfg.exec = Exec::serial;
    const SimulationTrace s = simulate(b, cfg);
    cfg.exec = Exec::openmp;
    const SimulationTrace p = simulate(b, cfg);
    REQUIRE(s.snapshots.size() == p.snapshots.size());
    for (std::size_t k = 0; k < s.snapshots.size(); ++k) CHECK(s.snapshots[k] == p.snapshots[k]);
}

TEST_CASE("minimal speed: executor does not change the result") {
    const auto b = PeriodicCoefficient::make_atoms(1.0, {{0.3, 0.7}, {0.55, 0.3}});
    SpeedConfig serial_cfg;
    serial_cfg.exec = Exec::serial;
    const SpeedResult s = minimal_speed(b, Direction::positive, serial_cfg);
    const SpeedResult p = minimal_speed(b, Direction::positive, {});
    CHECK(s.c_star == p.c_star);
    CHECK(s.lambda_star == p.lambda_star);
}
