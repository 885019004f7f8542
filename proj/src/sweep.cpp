#include "kpp/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "kpp/errors.hpp"
#include "kpp/floquet.hpp"

namespace kpp {

PeriodicCoefficient fourier_random_coefficient(double alpha, double L, std::uint64_t seed,
                                               double smoothness, int modes, int n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> a(static_cast<std::size_t>(modes)), c(static_cast<std::size_t>(modes));
    for (int k = 0; k < modes; ++k) {
        const double decay = 1.2 / std::pow(static_cast<double>(k + 1), smoothness);
        a[static_cast<std::size_t>(k)] = unit(rng) * decay;
        c[static_cast<std::size_t>(k)] = unit(rng) * decay;
    }
    std::vector<double> values(static_cast<std::size_t>(n));
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / n;
        double v = 1.0;
        for (int k = 0; k < modes; ++k)
            v += a[static_cast<std::size_t>(k)] * std::cos(two_pi * (k + 1) * x) +
                 c[static_cast<std::size_t>(k)] * std::sin(two_pi * (k + 1) * x);
        values[static_cast<std::size_t>(i)] = std::max(0.0, v);
    }
    double mass = 0.0;
    for (double v : values) mass += v;
    mass *= L / n;
    if (mass <= 0.0) throw InvalidParameter("fourier_random_coefficient: degenerate draw");
    const double scale = alpha * L / mass;
    for (double& v : values) v *= scale;
    return PeriodicCoefficient::make_samples(L, std::move(values));
}

namespace {

struct Member {
    PeriodicCoefficient coefficient;
    std::string descriptor;
};

std::vector<Member> build_members(const SweepPlan& plan) {
    std::vector<Member> members;
    if (const auto* sh = std::get_if<ShigesadaFamily>(&plan.family)) {
        for (double f : sh->fractions)
            for (double r : sh->contrasts) {
                std::ostringstream os;
                os << "shigesada f=" << f << " r=" << r;
                members.push_back(
                    {PeriodicCoefficient::make_shigesada(plan.alpha, plan.L, f, r), os.str()});
            }
    } else if (const auto* mc = std::get_if<MollifiedCombFamily>(&plan.family)) {
        const auto comb = PeriodicCoefficient::make_delta_comb(plan.alpha, plan.L);
        for (double eps : mc->epsilons) {
            std::ostringstream os;
            os << "mollified_comb eps=" << eps;
            members.push_back({mollify(comb, {eps, mc->kernel}), os.str()});
        }
    } else {
        const auto& fr = std::get<FourierRandomFamily>(plan.family);
        for (int i = 0; i < fr.count; ++i) {
            std::ostringstream os;
            os << "fourier seed=" << fr.seed << " idx=" << i;
            members.push_back({fourier_random_coefficient(plan.alpha, plan.L,
                                                          fr.seed + static_cast<std::uint64_t>(i),
                                                          fr.smoothness, fr.modes),
                               os.str()});
        }
    }
    return members;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepPlan& plan) {
    const std::vector<Member> members = build_members(plan);
    SpeedConfig speed_cfg = plan.speed;
    speed_cfg.exec = Exec::serial;  // rows are the parallel axis

    const auto comb = PeriodicCoefficient::make_delta_comb(plan.alpha, plan.L);
    const double c_h = minimal_speed(comb, Direction::positive, speed_cfg).c_star;

    std::vector<SweepRecord> records(members.size());
    parallel_for(static_cast<std::ptrdiff_t>(members.size()), plan.exec, [&](std::ptrdiff_t i) {
        const auto& member = members[static_cast<std::size_t>(i)];
        SweepRecord& rec = records[static_cast<std::size_t>(i)];
        rec.index = static_cast<int>(i);
        rec.descriptor = member.descriptor;
        const auto start = std::chrono::steady_clock::now();
        try {
            const SpeedResult r = minimal_speed(member.coefficient, Direction::positive, speed_cfg);
            rec.c_star = r.c_star;
            rec.lambda_star = r.lambda_star;
            rec.mu_at_star = r.mu_at_star;
            rec.gap_to_h = c_h - r.c_star;
            rec.method = r.method;
            // small mu summary over the admissible lambda band
            double mn = r.mu_at_star, mx = r.mu_at_star;
            for (int k = 0; k <= 8; ++k) {
                const double lam = 0.5 * std::sqrt(plan.alpha) +
                                   k / 8.0 * (2.0 * std::sqrt(plan.alpha +
                                                              plan.alpha * plan.alpha *
                                                                  plan.L * plan.L) -
                                              0.5 * std::sqrt(plan.alpha));
                const double mu = eigen_mu(member.coefficient, lam, speed_cfg.solver);
                mn = std::min(mn, mu);
                mx = std::max(mx, mu);
            }
            rec.mu_scan_min = mn;
            rec.mu_scan_max = mx;
            rec.ok = true;
        } catch (const std::exception& e) {
            rec.ok = false;
            rec.error = e.what();
        }
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    });
    return records;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::string out =
        "index,descriptor,c_star,lambda_star,mu_at_star,mu_scan_min,mu_scan_max,"
        "gap_to_h,method,ok,error\n";
    char buf[512];
    for (const SweepRecord& r : records) {
        const char* method = r.method == MuMethod::floquet
                                 ? "floquet"
                                 : (r.method == MuMethod::fd ? "fd" : "evolution");
        std::snprintf(buf, sizeof(buf),
                      "%d,\"%s\",%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%d,\"%s\"\n",
                      r.index, r.descriptor.c_str(), r.c_star, r.lambda_star, r.mu_at_star,
                      r.mu_scan_min, r.mu_scan_max, r.gap_to_h, method, r.ok ? 1 : 0,
                      r.error.c_str());
        out += buf;
    }
    return out;
}

std::vector<ConvergenceRow> convergence_table(const PeriodicCoefficient& b,
                                              const std::vector<double>& eps_grid,
                                              const SpeedConfig& cfg) {
    if (!b.has_atoms())
        throw InvalidParameter("convergence_table: nothing to mollify in an atom-free profile");
    const double c_b = minimal_speed(b, Direction::positive, cfg).c_star;
    std::vector<ConvergenceRow> rows;
    for (double eps : eps_grid) {
        const PeriodicCoefficient molly = mollify(b, {eps, MollifierKernel::triangle});
        const double c_m = minimal_speed(molly, Direction::positive, cfg).c_star;
        rows.push_back({eps, c_m, c_b - c_m});
    }
    return rows;
}

}  // namespace kpp
