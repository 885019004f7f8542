#include <doctest.h>

#include <cmath>

#include "kpp/errors.hpp"
#include "kpp/floquet.hpp"
#include "kpp/speed.hpp"
#include "kpp/sweep.hpp"
#include "support/oracles.hpp"

using namespace kpp;

TEST_CASE("constant coefficient: c* = 2 sqrt(alpha), lambda* = sqrt(alpha)") {
    for (double alpha : {1.0, 4.0}) {
        const auto b = PeriodicCoefficient::make_constant(alpha, 1.0);
        const SpeedResult r = minimal_speed(b);
        CHECK(std::abs(r.c_star - 2.0 * std::sqrt(alpha)) <= 1e-6);
        CHECK(std::abs(r.lambda_star - std::sqrt(alpha)) <= 1e-6);
        CHECK(r.scan_unimodal);
        CHECK(std::abs(r.c_star - (r.lambda_star * r.lambda_star - r.mu_at_star) /
                                      r.lambda_star) <= 1e-9);
    }
}

TEST_CASE("delta comb: strict optimum inside the band, against a phi-scan oracle") {
    const auto h = PeriodicCoefficient::make_delta_comb(1.0, 1.0);
    const SpeedResult r = minimal_speed(h);
    CHECK(r.method == MuMethod::floquet);
    CHECK(r.c_star > 2.0 + 1e-4);           // strictly above the constant case
    CHECK(r.c_star <= 2.0 * std::sqrt(2.0) + 1e-9);
    CHECK(r.lambda_star >= 1.0 - 1e-6);
    CHECK(r.lambda_star <= std::sqrt(2.0) + 1e-6);

    // oracle: Hill-reduction dispersion + direct scan of phi, refined to 1e-7
    auto phi = [&](double lam) {
        return (lam * lam - oracles::comb_mu(1.0, 1.0, lam)) / lam;
    };
    auto [coarse_x, coarse_f] = oracles::grid_min(phi, 0.6, 2.6, 1e-4);
    auto [fine_x, fine_f] = oracles::grid_min(phi, coarse_x - 2e-4, coarse_x + 2e-4, 1e-7);
    CHECK(r.c_star == doctest::Approx(fine_f).epsilon(1e-8));
    CHECK(std::abs(r.lambda_star - fine_x) <= 1e-5);
}

TEST_CASE("speed gap to the optimal comb") {
    const auto ones = PeriodicCoefficient::make_constant(1.0, 1.0);
    CHECK(speed_gap_to_optimum(ones) > 0.0);

    const auto h = PeriodicCoefficient::make_delta_comb(1.0, 1.0);
    CHECK(std::abs(speed_gap_to_optimum(h)) <= 1e-9);

    double prev = 1e9;
    for (double eps : {0.4, 0.2, 0.1}) {
        const double gap = speed_gap_to_optimum(mollify(h, {eps, MollifierKernel::triangle}));
        CHECK(gap > -1e-6);
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("direction symmetry") {
    const auto two = PeriodicCoefficient::make_atoms(1.0, {{0.3, 0.7}, {0.55, 0.3}});
    const auto [cp, cn] = direction_symmetry_check(two);
    CHECK(std::abs(cp - cn) <= 1e-6);

    const auto ones = PeriodicCoefficient::make_constant(1.0, 1.0);
    const auto [op, on] = direction_symmetry_check(ones);
    CHECK(std::abs(op - on) <= 1e-6);

    const auto shig = PeriodicCoefficient::make_shigesada(1.0, 1.0, 0.25, 6.0);
    const auto [sp, sn] = direction_symmetry_check(shig);
    CHECK(std::abs(sp - sn) <= 1e-6);
}

TEST_CASE("scaling law c*(s^2 b(s x)) = s c*(b)") {
    const double s = 2.0;
    const auto base = PeriodicCoefficient::make_shigesada(
        1.0, 1.0, 0.5, std::numeric_limits<double>::infinity());
    // rescaled: levels scale by s^2, geometry by 1/s
    const auto scaled = PeriodicCoefficient::make_shigesada(
        s * s * 1.0, 1.0 / s, 0.5, std::numeric_limits<double>::infinity());
    const double c1 = minimal_speed(base).c_star;
    const double c2 = minimal_speed(scaled).c_star;
    CHECK(std::abs(c2 - s * c1) <= 1e-5);
}

TEST_CASE("formula consistency: c* is the smallest c with a dispersion crossing") {
    // brute-force scan over (c, lambda) of lambda^2 - lambda c - mu(lambda) = 0
    for (const auto& b : {PeriodicCoefficient::make_delta_comb(1.0, 1.0),
                          PeriodicCoefficient::make_shigesada(
                              1.0, 1.0, 0.5, std::numeric_limits<double>::infinity()),
                          PeriodicCoefficient::make_atoms(1.0, {{0.3, 0.7}, {0.55, 0.3}})}) {
        const double c_star = minimal_speed(b).c_star;
        std::vector<double> lambdas, mus;
        for (double lam = 0.5; lam <= 3.0; lam += 1e-3) {
            lambdas.push_back(lam);
            mus.push_back(dispersion_mu(b, lam));
        }
        auto has_crossing = [&](double c) {
            for (std::size_t i = 0; i < lambdas.size(); ++i)
                if (lambdas[i] * lambdas[i] - lambdas[i] * c - mus[i] <= 0.0) return true;
            return false;
        };
        double smallest = 0.0;
        for (double c = 2.0; c <= 3.0; c += 1e-3) {
            if (has_crossing(c)) {
                smallest = c;
                break;
            }
        }
        CHECK(std::abs(smallest - c_star) <= 2e-3);
    }
}

TEST_CASE("lambda* stays in the derived band over the random ensemble") {
    for (int i = 0; i < 10; ++i) {
        const auto b = fourier_random_coefficient(1.0, 1.0, 500 + static_cast<unsigned>(i));
        const SpeedResult r = minimal_speed(b);
        CHECK(r.lambda_star >= 1.0 - 1e-3);
        CHECK(r.lambda_star <= std::sqrt(2.0) + 1e-3);
        CHECK(r.c_star >= 2.0 - 1e-3);
        CHECK(r.c_star <= 2.0 * std::sqrt(2.0) + 1e-3);
    }
}
