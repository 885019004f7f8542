#include <doctest.h>

#include <cmath>

#include "kpp/errors.hpp"
#include "kpp/floquet.hpp"
#include "kpp/speed.hpp"
#include "kpp/sweep.hpp"

using namespace kpp;

TEST_CASE("mollified comb family approaches the comb speed from below") {
    SweepPlan plan;
    plan.family = MollifiedCombFamily{{0.4, 0.2, 0.1}};
    const auto records = run_sweep(plan);
    REQUIRE(records.size() == 3);
    double prev_gap = 1e9;
    for (const auto& r : records) {
        REQUIRE(r.ok);
        CHECK(r.gap_to_h >= -1e-6);
        CHECK(r.gap_to_h < prev_gap);  // trend observed on this grid
        prev_gap = r.gap_to_h;
    }
}

TEST_CASE("shigesada family stays below the comb optimum") {
    SweepPlan plan;
    plan.family = ShigesadaFamily{{1.0, 0.5, 0.25, 0.125},
                                  {std::numeric_limits<double>::infinity()}};
    const auto records = run_sweep(plan);
    REQUIRE(records.size() == 4);
    for (const auto& r : records) {
        REQUIRE(r.ok);
        CHECK(r.gap_to_h >= -1e-6);
        CHECK(r.method == MuMethod::floquet);
    }
    // concentration helps: speed grows as the patch narrows
    for (std::size_t i = 1; i < records.size(); ++i)
        CHECK(records[i].c_star >= records[i - 1].c_star - 1e-9);
}

TEST_CASE("random fourier family sits inside the speed band") {
    SweepPlan plan;
    plan.family = FourierRandomFamily{123, 12};
    const auto records = run_sweep(plan);
    for (const auto& r : records) {
        REQUIRE(r.ok);
        CHECK(r.c_star >= 2.0 - 1e-3);
        CHECK(r.c_star <= 2.0 * std::sqrt(2.0) + 1e-3);
        CHECK(r.gap_to_h >= -1e-6);
        CHECK(r.method == MuMethod::fd);
    }
}

TEST_CASE("identical plan and seed give byte-identical csv") {
    SweepPlan plan;
    plan.family = FourierRandomFamily{99, 6};
    const std::string a = sweep_csv(run_sweep(plan));
    plan.exec = Exec::serial;
    const std::string b = sweep_csv(run_sweep(plan));
    CHECK(a == b);
}

TEST_CASE("convergence table") {
    const auto comb = PeriodicCoefficient::make_delta_comb(1.0, 1.0);
    const auto rows = convergence_table(comb, {0.4, 0.2, 0.1});
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].gap < rows[i - 1].gap);
    CHECK(rows.back().gap >= 0.0);

    CHECK_THROWS_AS(convergence_table(PeriodicCoefficient::make_constant(1.0, 1.0), {0.1}),
                    InvalidParameter);

    // asymmetric comb: gaps shrink and both directions agree on every row
    const auto two = PeriodicCoefficient::make_atoms(1.0, {{0.3, 0.7}, {0.55, 0.3}});
    const auto rows2 = convergence_table(two, {0.2, 0.1});
    CHECK(rows2[1].gap < rows2[0].gap);
    for (double eps : {0.2, 0.1}) {
        const auto molly = mollify(two, {eps, MollifierKernel::triangle});
        const auto [cp, cn] = direction_symmetry_check(molly);
        CHECK(std::abs(cp - cn) <= 1e-6);
    }
}
