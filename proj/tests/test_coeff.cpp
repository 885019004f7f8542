#include <doctest.h>

#include <cmath>
#include <vector>

#include "kpp/coefficient.hpp"
#include "kpp/coefficient_io.hpp"
#include "kpp/errors.hpp"

using namespace kpp;

namespace {
std::vector<double> sample_fn(double L, int n, double (*fn)(double)) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = fn(i * L / n);
    return v;
}
}  // namespace

TEST_CASE("make_constant") {
    const auto b = PeriodicCoefficient::make_constant(1.0, 1.0);
    CHECK(b.mass() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b.value(0.37) == doctest::Approx(1.0));

    const auto b2 = PeriodicCoefficient::make_constant(2.0, 0.5);
    CHECK(b2.mass() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(PeriodicCoefficient::make_constant(0.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(PeriodicCoefficient::make_constant(1.0, -2.0), InvalidParameter);
}

TEST_CASE("make_delta_comb") {
    const auto h = PeriodicCoefficient::make_delta_comb(1.0, 1.0);
    REQUIRE(h.atoms().size() == 1);
    CHECK(h.atoms()[0].position == doctest::Approx(0.5));
    CHECK(h.atoms()[0].mass == doctest::Approx(1.0));
    CHECK(h.mass() == doctest::Approx(1.0));

    const auto h2 = PeriodicCoefficient::make_delta_comb(3.0, 2.0);
    CHECK(h2.atoms()[0].position == doctest::Approx(1.0));
    CHECK(h2.atoms()[0].mass == doctest::Approx(6.0));
}

TEST_CASE("make_shigesada") {
    const auto half = PeriodicCoefficient::make_shigesada(
        1.0, 1.0, 0.5, std::numeric_limits<double>::infinity());
    CHECK(half.value(0.5) == doctest::Approx(2.0));
    CHECK(half.value(0.1) == doctest::Approx(0.0));
    CHECK(half.mass() == doctest::Approx(1.0).epsilon(1e-14));

    const auto degenerate = PeriodicCoefficient::make_shigesada(1.0, 1.0, 1.0, 3.0);
    CHECK(degenerate.value(0.3) == doctest::Approx(1.0));
    CHECK(degenerate.sup_deviation() == doctest::Approx(0.0));

    const auto quarter = PeriodicCoefficient::make_shigesada(
        1.0, 1.0, 0.25, std::numeric_limits<double>::infinity());
    CHECK(quarter.value(0.5) == doctest::Approx(4.0));
    CHECK(quarter.mass() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(PeriodicCoefficient::make_shigesada(1.0, 1.0, 0.5, -1.0),
                    InvalidParameter);
}

TEST_CASE("mass invariant across constructors") {
    for (double alpha : {0.25, 1.0, 4.0}) {
        for (double L : {0.5, 1.0, 2.0}) {
            const double target = alpha * L;
            CHECK(std::abs(PeriodicCoefficient::make_constant(alpha, L).mass() - target) <=
                  1e-12 * target);
            CHECK(std::abs(PeriodicCoefficient::make_delta_comb(alpha, L).mass() - target) <=
                  1e-12 * target);
            CHECK(std::abs(PeriodicCoefficient::make_shigesada(alpha, L, 0.3, 5.0).mass() -
                           target) <= 1e-12 * target);
        }
    }
}

TEST_CASE("atom placement rules") {
    CHECK_THROWS_AS(PeriodicCoefficient::make_atoms(1.0, {{0.0, 1.0}}), InvalidParameter);
    CHECK_THROWS_AS(PeriodicCoefficient::make_atoms(1.0, {{0.3, 1.0}, {0.3, 0.5}}),
                    InvalidParameter);
    CHECK_THROWS_AS(PeriodicCoefficient::make_atoms(1.0, {{0.3, -1.0}}), InvalidParameter);
    const auto two = PeriodicCoefficient::make_atoms(1.0, {{0.55, 0.3}, {0.3, 0.7}});
    CHECK(two.alpha() == doctest::Approx(1.0));
    CHECK(two.min_atom_gap() == doctest::Approx(0.25));
}

TEST_CASE("mollify: triangle bump, exact mass, overlap guard") {
    const auto h = PeriodicCoefficient::make_delta_comb(1.0, 1.0);
    const auto m = mollify(h, {0.1, MollifierKernel::triangle});
    CHECK(m.has_smooth_part());
    CHECK(std::abs(m.mass() - 1.0) <= 1e-12);
    // apex height 2m/eps = 20 at x = 0.5
    CHECK(m.value(0.5) == doctest::Approx(20.0).epsilon(1e-2));
    CHECK(m.value(0.5 + 0.06) == doctest::Approx(0.0));

    for (double eps : {0.2, 0.1, 0.05})
        CHECK(std::abs(mollify(h, {eps, MollifierKernel::triangle}).mass() - 1.0) <= 1e-12);

    // two atoms 0.25 apart: a 0.3-wide kernel merges them
    const auto two = PeriodicCoefficient::make_atoms(1.0, {{0.3, 0.7}, {0.55, 0.3}});
    CHECK_THROWS_AS(mollify(two, {0.3, MollifierKernel::triangle}), KernelOverlap);
    CHECK_NOTHROW(mollify(two, {0.2, MollifierKernel::triangle}));

    CHECK_THROWS_AS(mollify(PeriodicCoefficient::make_constant(1.0, 1.0), {0.1}),
                    InvalidParameter);

    const auto g = mollify(h, {0.1, MollifierKernel::gaussian_truncated});
    CHECK(std::abs(g.mass() - 1.0) <= 1e-12);
}

TEST_CASE("weak_pairing basics") {
    const int k = 1024;
    const auto ones = std::vector<double>(k, 1.0);

    const auto c = PeriodicCoefficient::make_constant(1.0, 1.0);
    CHECK(weak_pairing(c, ones) == doctest::Approx(1.0).epsilon(1e-13));

    const auto h = PeriodicCoefficient::make_delta_comb(1.0, 1.0);
    const auto ramp = sample_fn(1.0, k, [](double x) { return x; });
    CHECK(weak_pairing(h, ramp) == doctest::Approx(0.5).epsilon(1e-13));

    const auto shig = PeriodicCoefficient::make_shigesada(
        1.0, 1.0, 0.5, std::numeric_limits<double>::infinity());
    CHECK(weak_pairing(shig, ones) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("weak-* convergence of the mollification") {
    const auto h = PeriodicCoefficient::make_delta_comb(1.0, 1.0);
    const int k = 2048;
    const auto eta = sample_fn(1.0, k, [](double x) { return std::cos(2.0 * M_PI * x); });
    // exact pairing of the point mass: alpha L * eta(L/2) = cos(pi) = -1
    const double exact = weak_pairing(h, eta);
    CHECK(exact == doctest::Approx(-1.0).epsilon(1e-6));

    double prev = 1e9;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
        const double paired = weak_pairing(mollify(h, {eps, MollifierKernel::triangle}), eta);
        const double err = std::abs(paired - exact);
        CHECK(err < prev);
        prev = err;
    }
    // triangle-kernel bias: |eta''(L/2)|/2 * eps^2/24 ~= 5.1e-4 at eps = 0.025
    CHECK(prev < 6e-4);
}

TEST_CASE("periodic seam consistency under frame rotation") {
    const auto two = PeriodicCoefficient::make_atoms(1.0, {{0.3, 0.7}, {0.55, 0.3}});
    const int k = 1024;
    const auto eta = sample_fn(1.0, k, [](double x) {
        return 1.3 + std::sin(2.0 * M_PI * x) + 0.4 * std::cos(4.0 * M_PI * x);
    });
    // eta shifted by L/2 (k even, exact index rotation)
    std::vector<double> eta_shifted(eta.size());
    for (int i = 0; i < k; ++i)
        eta_shifted[static_cast<std::size_t>(i)] = eta[static_cast<std::size_t>((i + k / 2) % k)];

    const auto rotated = two.rotate_frame(0.5);
    CHECK(weak_pairing(rotated, eta_shifted) ==
          doctest::Approx(weak_pairing(two, eta)).epsilon(1e-12));
}

TEST_CASE("coefficient json round trips") {
    const auto parsed = coefficient_from_json(R"({
        "period": 1.0, "alpha": 1.0, "kind": "shigesada",
        "fraction": 0.5, "contrast": "inf"
    })");
    CHECK(parsed.value(0.5) == doctest::Approx(2.0));

    const auto comb = coefficient_from_json(
        R"({"period": 2.0, "alpha": 3.0, "kind": "delta_comb"})");
    CHECK(comb.atoms()[0].mass == doctest::Approx(6.0));

    const auto mix = coefficient_from_json(R"({
        "period": 1.0, "kind": "mixture",
        "continuous": {"type": "piecewise", "breakpoints": [0.0, 0.5], "levels": [0.5, 0.0]},
        "atoms": [{"position": 0.75, "mass": 0.75}]
    })");
    CHECK(mix.alpha() == doctest::Approx(1.0));

    const auto back = coefficient_from_json(coefficient_to_json(mix));
    CHECK(back.alpha() == doctest::Approx(mix.alpha()));
    CHECK(back.atoms().size() == mix.atoms().size());

    CHECK_THROWS_AS(coefficient_from_json(R"({"period": 1.0, "kind": "nope"})"),
                    InvalidParameter);
}
