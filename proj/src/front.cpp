#include "kpp/front.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kpp/errors.hpp"

namespace kpp {

namespace {

struct LineFit {
    double slope = 0.0, intercept = 0.0, rms = 0.0;
};

LineFit least_squares(const std::vector<double>& t, const std::vector<double>& x) {
    const std::size_t n = t.size();
    double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        st += t[i];
        sx += x[i];
        stt += t[i] * t[i];
        stx += t[i] * x[i];
    }
    const double d = n * stt - st * st;
    LineFit f;
    f.slope = (n * stx - st * sx) / d;
    f.intercept = (sx - f.slope * st) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = x[i] - (f.slope * t[i] + f.intercept);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

LineFit window_fit(const SimulationTrace& trace, Direction dir, double t1, double t2) {
    std::vector<double> ts, xs;
    for (const FrontSample& f : trace.front) {
        if (f.t < t1 || f.t > t2) continue;
        const double x = (dir == Direction::positive) ? f.x_plus : f.x_minus;
        if (std::isnan(x)) continue;
        ts.push_back(f.t);
        xs.push_back(x);
    }
    if (ts.size() < 8) throw NoisyFront("fit_front: too few usable front samples in window");
    // monotone advance up to grid jitter
    const double jitter = 2.0 * trace.dx;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double forward = (dir == Direction::positive) ? xs[i] - xs[i - 1]
                                                            : xs[i - 1] - xs[i];
        if (forward < -jitter)
            throw NoisyFront("fit_front: front retreats beyond the jitter tolerance");
    }
    LineFit f = least_squares(ts, xs);
    if (dir == Direction::negative) {
        f.slope = -f.slope;  // report positive spreading speed
        f.intercept = -f.intercept;
    }
    return f;
}

}  // namespace

FrontFit fit_front(const SimulationTrace& trace, Direction direction,
                   double window_fraction) {
    if (!(window_fraction > 0.0) || window_fraction > 1.0)
        throw InvalidParameter("fit_front: window fraction must lie in (0, 1]");
    const double t2 = trace.t_end;
    const double t1 = trace.t_end * (1.0 - window_fraction);
    if (trace.contaminated && trace.contamination_time <= t2)
        throw InvalidParameter("fit_front: trace is boundary-contaminated in the fit window");

    const LineFit main = window_fit(trace, direction, t1, t2);
    if (!(main.slope > 0.0)) throw NoisyFront("fit_front: nonpositive speed estimate");

    const double span_needed = 5.0 * trace.period / main.slope;
    if (t2 - t1 < span_needed)
        throw InvalidParameter("fit_front: window shorter than five period crossings");
    if (main.rms > 0.1 * trace.period)
        throw NoisyFront("fit_front: residual exceeds a tenth of the period");

    const LineFit early = window_fit(trace, direction, 0.4 * t2, 0.7 * t2);
    const LineFit late = window_fit(trace, direction, 0.7 * t2, t2);

    FrontFit fit;
    fit.direction = direction;
    fit.speed_estimate = main.slope;
    fit.intercept = main.intercept;
    fit.fit_window = {t1, t2};
    fit.residual_rms = main.rms;
    fit.error_bar = 0.5 * std::abs(early.slope - late.slope);

    // pulsating-wave periodicity: compare u(., t_ref) with the solution one
    // period L later in space and T = L/c later in time, around the front
    if (!trace.snapshots.empty()) {
        const double T = trace.period / fit.speed_estimate;
        double t_ref = 0.0;
        const std::vector<double>& base = trace.snapshot_at(t2 - 1.5 * T, &t_ref);
        if (t_ref + T <= trace.times.back() + 1e-12) {
            const std::vector<double> later = trace.interpolated_snapshot(t_ref + T);
            const double xf = (direction == Direction::positive)
                                  ? fit.speed_estimate * t_ref + fit.intercept
                                  : -(fit.speed_estimate * t_ref + fit.intercept);
            const int shift = static_cast<int>(std::lround(trace.period / trace.dx));
            const int sgn = (direction == Direction::positive) ? 1 : -1;
            int i_lo = static_cast<int>((xf - 3.0 * trace.period + trace.domain_half_width) /
                                        trace.dx);
            int i_hi = static_cast<int>((xf + 3.0 * trace.period + trace.domain_half_width) /
                                        trace.dx);
            i_lo = std::max(i_lo, (sgn > 0) ? shift : 0);
            i_hi = std::min(i_hi, (sgn > 0) ? trace.n : trace.n - shift);
            double defect = 0.0;
            for (int i = i_lo; i < i_hi; ++i)
                defect = std::max(defect,
                                  std::abs(later[static_cast<std::size_t>(i)] -
                                           base[static_cast<std::size_t>(i - sgn * shift)]));
            fit.periodicity_defect = defect;
        }
    }
    return fit;
}

double decay_rate_probe(const SimulationTrace& trace, double t, Direction direction) {
    double actual = 0.0;
    const std::vector<double>& u = trace.snapshot_at(t, &actual);
    const std::size_t n = u.size();

    std::vector<double> xs, ls;
    if (direction == Direction::positive) {
        // walk outward from the rightmost O(1) point
        std::size_t i = n;
        while (i-- > 0)
            if (u[i] >= 1e-3) break;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (u[j] <= 0.0 || u[j] < 1e-8) break;
            if (u[j] > 1e-3) continue;
            xs.push_back(trace.x(static_cast<int>(j)));
            ls.push_back(std::log(u[j]));
        }
    } else {
        std::size_t i = 0;
        for (; i < n; ++i)
            if (u[i] >= 1e-3) break;
        for (std::size_t j = i; j-- > 0;) {
            if (u[j] <= 0.0 || u[j] < 1e-8) break;
            if (u[j] > 1e-3) continue;
            xs.push_back(-trace.x(static_cast<int>(j)));
            ls.push_back(std::log(u[j]));
        }
    }
    if (xs.size() < 4 || std::abs(xs.back() - xs.front()) < 3.0 * trace.period)
        throw InsufficientEdge("decay_rate_probe: leading edge spans less than 3 L");
    const LineFit f = least_squares(xs, ls);
    return -f.slope;
}

}  // namespace kpp
