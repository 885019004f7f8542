#include "kpp/speed.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <vector>

#include "kpp/errors.hpp"
#include "kpp/floquet.hpp"

namespace kpp {

double eigen_mu(const PeriodicCoefficient& b, double lambda, const SolverConfig& cfg,
                MuMethod* used) {
    if (b.is_exact()) {
        if (used) *used = MuMethod::floquet;
        return dispersion_mu(b, lambda);
    }
    try {
        if (used) *used = MuMethod::fd;
        return principal_eigenpair_fd(b, lambda, cfg).mu;
    } catch (const SpuriousMode&) {
        if (used) *used = MuMethod::evolution;
        return principal_eigenpair_evolution(b, lambda, 1.0, cfg).mu;
    }
}

namespace {

double golden_section(const std::vector<double>& xs, std::size_t k,
                      const std::function<double(double)>& f, double tol,
                      double* xmin, double* fmin) {
    constexpr double invphi = 0.6180339887498949;
    double a = xs[k - 1], d = xs[k + 1];
    double bpt = d - invphi * (d - a);
    double cpt = a + invphi * (d - a);
    double fb = f(bpt), fc = f(cpt);
    while (d - a > tol) {
        if (fb <= fc) {
            d = cpt;
            cpt = bpt;
            fc = fb;
            bpt = d - invphi * (d - a);
            fb = f(bpt);
        } else {
            a = bpt;
            bpt = cpt;
            fb = fc;
            cpt = a + invphi * (d - a);
            fc = f(cpt);
        }
    }
    if (fb <= fc) {
        *xmin = bpt;
        *fmin = fb;
    } else {
        *xmin = cpt;
        *fmin = fc;
    }
    return d - a;
}

}  // namespace

SpeedResult minimal_speed(const PeriodicCoefficient& b, Direction direction,
                          const SpeedConfig& cfg) {
    const double alpha = b.alpha();
    const double L = b.period();
    const double sign = (direction == Direction::positive) ? 1.0 : -1.0;

    const MuMethod method = b.is_exact() ? MuMethod::floquet : MuMethod::fd;

    auto phi = [&](double lambda) {
        const double mu = eigen_mu(b, sign * lambda, cfg.solver, nullptr);
        return (lambda * lambda - mu) / lambda;
    };

    const double lo = 0.5 * std::sqrt(alpha);
    const double hi = 2.0 * std::sqrt(alpha + alpha * alpha * L * L);
    const int np = std::max(cfg.scan_points, 8);
    std::vector<double> xs(static_cast<std::size_t>(np));
    std::vector<double> fs(static_cast<std::size_t>(np));
    const double ratio = std::pow(hi / lo, 1.0 / (np - 1));
    for (int i = 0; i < np; ++i)
        xs[static_cast<std::size_t>(i)] = lo * std::pow(ratio, i);
    parallel_for(np, cfg.exec,
                 [&](std::ptrdiff_t i) { fs[static_cast<std::size_t>(i)] = phi(xs[static_cast<std::size_t>(i)]); });

    std::size_t k = 0;
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (fs[i] < fs[k]) k = i;  // strict: ties keep the smallest lambda
    if (k == 0 || k + 1 == xs.size())
        throw BracketEscape("minimal_speed: scan minimum on the bracket edge (lambda=" +
                            std::to_string(xs[k]) + ", phi=" + std::to_string(fs[k]) + ")");

    int local_minima = 0;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i)
        if (fs[i] < fs[i - 1] && fs[i] <= fs[i + 1]) ++local_minima;
    const bool unimodal = local_minima <= 1;
    if (!unimodal)
        std::cerr << "[minimal_speed] warning: phi scan is not unimodal ("
                  << local_minima << " local minima); keeping the global scan minimum\n";

    double lambda_star = xs[k], c_star = fs[k];
    const double width =
        golden_section(xs, k, phi, cfg.lambda_tol, &lambda_star, &c_star);
    if (fs[k] < c_star) {  // golden section never beat the scan point
        lambda_star = xs[k];
        c_star = fs[k];
    }
    // Comparison search saturates at sqrt(eval noise / phi'') around a flat
    // minimum; a parabolic vertex through points h apart localizes lambda*
    // down to noise/(phi'' h) instead.
    {
        const double h = std::max(1e-4 * lambda_star, 10.0 * width);
        const double fl = phi(lambda_star - h), fr = phi(lambda_star + h);
        const double denom = fl - 2.0 * c_star + fr;
        if (denom > 0.0) {
            const double shift = 0.5 * h * (fl - fr) / denom;
            if (std::abs(shift) <= h) {
                const double cand = lambda_star + shift;
                const double fc = phi(cand);
                lambda_star = cand;
                c_star = std::min(c_star, fc);
            }
        }
    }

    SpeedResult result;
    result.c_star = c_star;
    result.lambda_star = lambda_star;
    result.direction = direction;
    result.mu_at_star = lambda_star * lambda_star - lambda_star * c_star;
    result.bracket = {xs[k - 1], xs[k + 1]};
    result.method = method;
    result.tolerance_achieved = width;
    result.scan_unimodal = unimodal;
    return result;
}

double speed_gap_to_optimum(const PeriodicCoefficient& b, const SpeedConfig& cfg) {
    const auto comb = PeriodicCoefficient::make_delta_comb(b.alpha(), b.period());
    const double ch = minimal_speed(comb, Direction::positive, cfg).c_star;
    const double cb = minimal_speed(b, Direction::positive, cfg).c_star;
    return ch - cb;
}

std::pair<double, double> direction_symmetry_check(const PeriodicCoefficient& b,
                                                   const SpeedConfig& cfg) {
    return {minimal_speed(b, Direction::positive, cfg).c_star,
            minimal_speed(b, Direction::negative, cfg).c_star};
}

}  // namespace kpp
