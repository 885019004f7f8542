// Timing comparison of the serial reference kernels against their OpenMP
// twins, plus the two embarrassing loops (dispersion curve, simulation).

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include <omp.h>

#include "kpp/floquet.hpp"
#include "kpp/kernels.hpp"
#include "kpp/pde.hpp"

using namespace kpp;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(int reps, F&& f) {
    f();  // warm up
    const auto start = clock_type::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count() /
           reps;
}

void report(const char* name, double serial_ms, double omp_ms) {
    std::printf("%-24s %10.3f ms %10.3f ms   x%.2f\n", name, serial_ms, omp_ms,
                serial_ms / omp_ms);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-24s %13s %13s\n", "kernel", "serial", "openmp");

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> val(0.0, 1.0);

    const std::size_t n = 1 << 20;
    std::vector<double> u(n), growth(n), out(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = val(rng);
        growth[i] = std::exp(4.0 * val(rng) * 0.01);
    }

    {
        std::vector<double> a = u, b = u;
        const double s = time_ms(50, [&] { kernels::logistic_update_serial(a, growth); });
        const double p = time_ms(50, [&] { kernels::logistic_update_omp(b, growth); });
        report("logistic_update", s, p);
    }
    {
        const double s =
            time_ms(20, [&] { kernels::diffusion_rhs_serial(u, out, 12.5, Boundary::neumann); });
        const double p =
            time_ms(20, [&] { kernels::diffusion_rhs_omp(u, out, 12.5, Boundary::neumann); });
        report("diffusion_rhs", s, p);
    }
    {
        std::vector<double> taps(257, 1.0 / 257.0);
        std::vector<double> conv(n);
        const double s = time_ms(3, [&] { kernels::convolve_serial(u, taps, 128, conv); });
        const double p = time_ms(3, [&] { kernels::convolve_omp(u, taps, 128, conv); });
        report("convolve", s, p);
    }
    {
        const auto two = PeriodicCoefficient::make_atoms(1.0, {{0.3, 0.7}, {0.55, 0.3}});
        std::vector<double> lambdas;
        for (int i = 1; i <= 64; ++i) lambdas.push_back(0.05 * i);
        const double s =
            time_ms(3, [&] { dispersion_curve(two, lambdas, Exec::serial); });
        const double p =
            time_ms(3, [&] { dispersion_curve(two, lambdas, Exec::openmp); });
        report("dispersion_curve", s, p);
    }
    {
        SimulationConfig cfg;
        cfg.grid_dx = 1.0 / 512.0;
        cfg.domain_half_width = 20.0;
        cfg.t_end = 1.0;
        const auto comb = PeriodicCoefficient::make_delta_comb(1.0, 1.0);
        cfg.exec = Exec::serial;
        const double s = time_ms(1, [&] { simulate(comb, cfg); });
        cfg.exec = Exec::openmp;
        const double p = time_ms(1, [&] { simulate(comb, cfg); });
        report("simulate (t=1)", s, p);
    }
    return 0;
}
