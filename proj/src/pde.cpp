#include "kpp/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kpp/errors.hpp"

namespace kpp {

namespace kernels {

namespace {
inline double logistic(double u, double g) {
    if (g == 1.0) return u;
    return u * g / (1.0 + u * (g - 1.0));
}

inline void diffusion_rhs_at(std::span<const double> u, std::span<double> rhs,
                             double kappa, Boundary bc, std::size_t i, std::size_t n) {
    if (i == 0) {
        rhs[0] = (bc == Boundary::dirichlet_zero)
                     ? 0.0
                     : u[0] + kappa * (2.0 * u[1] - 2.0 * u[0]);
    } else if (i == n - 1) {
        rhs[i] = (bc == Boundary::dirichlet_zero)
                     ? 0.0
                     : u[i] + kappa * (2.0 * u[i - 1] - 2.0 * u[i]);
    } else {
        rhs[i] = u[i] + kappa * (u[i - 1] - 2.0 * u[i] + u[i + 1]);
    }
}
}  // namespace

void logistic_update_serial(std::span<double> u, std::span<const double> growth) {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = logistic(u[i], growth[i]);
}

void logistic_update_omp(std::span<double> u, std::span<const double> growth) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        u[static_cast<std::size_t>(i)] =
            logistic(u[static_cast<std::size_t>(i)], growth[static_cast<std::size_t>(i)]);
}

void diffusion_rhs_serial(std::span<const double> u, std::span<double> rhs, double kappa,
                          Boundary bc) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) diffusion_rhs_at(u, rhs, kappa, bc, i, n);
}

void diffusion_rhs_omp(std::span<const double> u, std::span<double> rhs, double kappa,
                       Boundary bc) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        diffusion_rhs_at(u, rhs, kappa, bc, static_cast<std::size_t>(i),
                         static_cast<std::size_t>(n));
}

namespace {
inline double convolve_at(std::span<const double> u, std::span<const double> taps,
                          int offset, std::ptrdiff_t i) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
    const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(taps.size());
    double acc = 0.0;
    for (std::ptrdiff_t j = 0; j < k; ++j) {
        const std::ptrdiff_t src = i + j - offset;
        if (src >= 0 && src < n) acc += taps[static_cast<std::size_t>(j)] * u[static_cast<std::size_t>(src)];
    }
    return acc;
}
}  // namespace

void convolve_serial(std::span<const double> u, std::span<const double> taps, int offset,
                     std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = convolve_at(u, taps, offset, static_cast<std::ptrdiff_t>(i));
}

void convolve_omp(std::span<const double> u, std::span<const double> taps, int offset,
                  std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = convolve_at(u, taps, offset, i);
}

}  // namespace kernels

namespace {

TridiagFactor diffusion_factor(int n, double kappa, Boundary bc) {
    const std::size_t m = static_cast<std::size_t>(n);
    std::vector<double> lower(m - 1, -kappa), upper(m - 1, -kappa), diag(m, 1.0 + 2.0 * kappa);
    if (bc == Boundary::dirichlet_zero) {
        diag[0] = diag[m - 1] = 1.0;
        upper[0] = 0.0;
        lower[m - 2] = 0.0;
    } else {
        upper[0] = -2.0 * kappa;
        lower[m - 2] = -2.0 * kappa;
    }
    return {lower, diag, upper};
}

}  // namespace

Stepper::Stepper(const PeriodicCoefficient& b, double x_left, double dx, int n, double dt,
                 Boundary bc, Scheme scheme, AtomScheme atom_scheme, Exec exec)
    : n_(n), dx_(dx), dt_(dt), bc_(bc), scheme_(scheme), exec_(exec) {
    if (n < 8) throw InvalidParameter("stepper: grid too small");
    if (!(dt > 0.0)) throw InvalidParameter("stepper: dt must be positive");
    const double L = b.period();
    const double cells_d = L / dx;
    const int cells = static_cast<int>(std::lround(cells_d));
    if (cells < 1 || std::abs(cells_d - cells) > 1e-9 * cells)
        throw InvalidParameter("stepper: dx must divide the period");
    const double phase_d = x_left / dx;
    const long phase_l = std::lround(phase_d);
    if (std::abs(phase_d - static_cast<double>(phase_l)) > 1e-9)
        throw InvalidParameter("stepper: grid origin must sit on a node");

    const std::vector<double> cell_rates = b.node_rates(cells, atom_scheme);
    rates_.resize(static_cast<std::size_t>(n));
    growth_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        long idx = (phase_l + i) % cells;
        if (idx < 0) idx += cells;
        const double r = cell_rates[static_cast<std::size_t>(idx)];
        rates_[static_cast<std::size_t>(i)] = r;
        growth_[static_cast<std::size_t>(i)] = (r == 0.0) ? 1.0 : std::exp(r * dt);
    }

    work_.resize(static_cast<std::size_t>(n));
    work2_.resize(static_cast<std::size_t>(n));
    win_lo_ = 0;
    win_hi_ = n;
    if (scheme == Scheme::strang_cn) {
        cn_ = diffusion_factor(n, dt / (4.0 * dx * dx), bc);
        be_ = diffusion_factor(n, dt / (2.0 * dx * dx), bc);
        // A spatially rough reaction imprints grid-scale structure on u every
        // step (factor e^{r_i dt} per cell); the trapezoidal half-step is not
        // monotone at kappa = dt/4dx^2 >> 1 and rings on such features, dipping
        // negative at the leading edge. Those coefficients get backward-Euler
        // halves: an M-matrix resolvent, positivity-preserving at any dt.
        double max_rate = 0.0, min_rate = std::numeric_limits<double>::infinity();
        for (double r : rates_) {
            max_rate = std::max(max_rate, r);
            min_rate = std::min(min_rate, r);
        }
        const bool discontinuous =
            b.has_continuous_part() &&
            std::holds_alternative<PiecewiseConstant>(*b.continuous()) &&
            b.sup_deviation() > 1e-12 * b.alpha();
        monotone_halves_ =
            b.has_atoms() || discontinuous || dt * (max_rate - min_rate) > 0.01;
    } else {
        if (bc != Boundary::dirichlet_zero)
            throw InvalidParameter("duhamel scheme supports the Dirichlet boundary only");
        double max_rate = 0.0;
        for (double r : rates_) max_rate = std::max(max_rate, r);
        if (dt * max_rate > 1.0)
            throw StabilityError("duhamel scheme needs dt * max rate <= 1");
        const int half = static_cast<int>(std::ceil(8.0 * std::sqrt(2.0 * dt) / dx)) + 1;
        taps_.resize(static_cast<std::size_t>(2 * half + 1));
        double sum = 0.0;
        for (int j = -half; j <= half; ++j) {
            const double g = std::exp(-(j * dx) * (j * dx) / (4.0 * dt));
            taps_[static_cast<std::size_t>(j + half)] = g;
            sum += g;
        }
        for (double& tap : taps_) tap /= sum;  // discrete mass 1: conservative and positive
    }
}

void Stepper::set_window(int lo, int hi) {
    if (scheme_ != Scheme::strang_cn || bc_ == Boundary::neumann) return;
    lo = std::max(0, lo);
    hi = std::min(n_, hi);
    if (hi - lo < 8) {
        lo = 0;
        hi = n_;
    }
    if (lo == win_lo_ && hi == win_hi_) return;
    win_lo_ = lo;
    win_hi_ = hi;
    const int len = hi - lo;
    const double dx2 = dx_ * dx_;
    cn_ = diffusion_factor(len, dt_ / (4.0 * dx2), Boundary::dirichlet_zero);
    be_ = diffusion_factor(len, dt_ / (2.0 * dx2), Boundary::dirichlet_zero);
}

void Stepper::diffusion_half(std::vector<double>& u, bool backward_euler) {
    const double kappa = dt_ / (4.0 * dx_ * dx_);
    const std::size_t len = static_cast<std::size_t>(win_hi_ - win_lo_);
    const Boundary bc =
        (win_lo_ == 0 && win_hi_ == n_) ? bc_ : Boundary::dirichlet_zero;
    std::span<double> sub(u.data() + win_lo_, len);
    std::span<double> rhs(work_.data(), len);
    if (backward_euler) {
        // first-order damped half; rhs is u itself with pinned boundary rows
        std::copy(sub.begin(), sub.end(), rhs.begin());
        if (bc == Boundary::dirichlet_zero) rhs[0] = rhs[len - 1] = 0.0;
        be_.solve(rhs, sub);
    } else {
        if (exec_ == Exec::openmp)
            kernels::diffusion_rhs_omp(sub, rhs, kappa, bc);
        else
            kernels::diffusion_rhs_serial(sub, rhs, kappa, bc);
        cn_.solve(rhs, sub);
    }

    double sup = 0.0, mn = 0.0;
    for (double v : sub) {
        sup = std::max(sup, std::abs(v));
        mn = std::min(mn, v);
    }
    min_seen_ = std::min(min_seen_, mn);
    if (!(sup < 1e300)) throw SchemeViolation("diffusion step produced a non-finite state");
    if (mn < -1e-12 * std::max(1.0, sup))
        throw SchemeViolation("diffusion step undershot below -1e-12");
}

void Stepper::duhamel_step(std::vector<double>& u) {
    // one-term Duhamel quadrature: heat-kernel convolution of the
    // left-endpoint reaction update
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r = rates_[i];
        work_[i] = u[i] + dt_ * r * u[i] * (1.0 - u[i]);
    }
    const int offset = static_cast<int>(taps_.size() / 2);
    if (exec_ == Exec::openmp)
        kernels::convolve_omp(work_, taps_, offset, work2_);
    else
        kernels::convolve_serial(work_, taps_, offset, work2_);
    u.swap(work2_);
}

void Stepper::step(std::vector<double>& u, bool smoothing_start) {
    if (static_cast<int>(u.size()) != n_) throw InvalidParameter("stepper: state size mismatch");
    if (scheme_ == Scheme::duhamel) {
        duhamel_step(u);
        return;
    }
    const bool be = smoothing_start || monotone_halves_;
    const std::size_t len = static_cast<std::size_t>(win_hi_ - win_lo_);
    std::span<double> sub(u.data() + win_lo_, len);
    std::span<const double> g(growth_.data() + win_lo_, len);
    diffusion_half(u, be);
    if (exec_ == Exec::openmp)
        kernels::logistic_update_omp(sub, g);
    else
        kernels::logistic_update_serial(sub, g);
    diffusion_half(u, be);
}

std::vector<double> step_strang(std::vector<double> u, const PeriodicCoefficient& b,
                                double dt, double dx, double x_left, Boundary bc) {
    Stepper stepper(b, x_left, dx, static_cast<int>(u.size()), dt, bc, Scheme::strang_cn,
                    AtomScheme::lump, Exec::serial);
    stepper.step(u);
    return u;
}

const std::vector<double>& SimulationTrace::snapshot_at(double t, double* actual_time) const {
    if (snapshots.empty()) throw InvalidParameter("trace holds no snapshots");
    std::size_t best = 0;
    for (std::size_t i = 1; i < times.size(); ++i)
        if (std::abs(times[i] - t) < std::abs(times[best] - t)) best = i;
    if (actual_time) *actual_time = times[best];
    return snapshots[best];
}

std::vector<double> SimulationTrace::interpolated_snapshot(double t) const {
    if (snapshots.empty()) throw InvalidParameter("trace holds no snapshots");
    if (t <= times.front()) return snapshots.front();
    if (t >= times.back()) return snapshots.back();
    std::size_t hi = 1;
    while (times[hi] < t) ++hi;
    const std::size_t lo = hi - 1;
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    std::vector<double> out(snapshots[lo].size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (1.0 - w) * snapshots[lo][i] + w * snapshots[hi][i];
    return out;
}

namespace {

/// Front positions are read off the one-period moving average of u: the
/// pulsating microstructure (spikes at atom cells, kinks at level jumps)
/// makes raw level sets of u saw-tooth by up to a full period, while the
/// cell-averaged field crosses the threshold once and cleanly. The
/// asymptotic speed is the same.
FrontSample extract_front(const std::vector<double>& u, double x_left, double dx,
                          double period, double t, double theta,
                          std::vector<double>& prefix) {
    const std::size_t n = u.size();
    prefix.resize(n + 1);
    prefix[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + u[i];
    const long cells = std::max<long>(1, std::lround(period / dx));
    const long half = cells / 2;
    auto avg = [&](long i) {
        const long lo = std::clamp<long>(i - half, 0, static_cast<long>(n));
        const long hi = std::clamp<long>(i - half + cells, 0, static_cast<long>(n));
        return (prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo)]) /
               static_cast<double>(cells);
    };

    const double nan = std::numeric_limits<double>::quiet_NaN();
    FrontSample f{t, nan, nan};
    for (long i = static_cast<long>(n); i-- > 0;) {
        const double ai = avg(i);
        if (ai >= theta) {
            if (i + 1 < static_cast<long>(n)) {
                const double next = avg(i + 1);
                const double frac = (ai - theta) / (ai - next);
                f.x_plus = x_left + (static_cast<double>(i) + frac) * dx;
            } else {
                f.x_plus = x_left + static_cast<double>(i) * dx;
            }
            break;
        }
    }
    for (long i = 0; i < static_cast<long>(n); ++i) {
        const double ai = avg(i);
        if (ai >= theta) {
            if (i > 0) {
                const double prev = avg(i - 1);
                const double frac = (ai - theta) / (ai - prev);
                f.x_minus = x_left + (static_cast<double>(i) - frac) * dx;
            } else {
                f.x_minus = x_left;
            }
            break;
        }
    }
    return f;
}

}  // namespace

SimulationTrace simulate(const PeriodicCoefficient& b,
                         const std::function<double(double)>& u0,
                         const SimulationConfig& cfg) {
    const double L = b.period();
    const double alpha = b.alpha();

    double dx = (cfg.grid_dx > 0.0) ? cfg.grid_dx : L / 512.0;
    if (dx > L / 256.0 + 1e-15)
        throw InvalidParameter("simulate: grid_dx must be at most L/256");

    double X = cfg.domain_half_width;
    if (X <= 0.0) {
        // The paper's upper bound on the speed sizes the box so the front and
        // its exponential precursor stay clear of the boundary until t_end.
        const double c_ub = 2.0 * std::sqrt(alpha + alpha * alpha * L * L);
        const double tail = 20.0 / std::sqrt(alpha);
        X = std::max(20.0 * L, c_ub * cfg.t_end + tail + 8.0 * L);
        X = std::ceil(X / L) * L;
    } else {
        if (std::abs(X / L - std::round(X / L)) > 1e-9)
            throw InvalidParameter("simulate: domain half-width must be a multiple of L");
        if (X < 20.0 * L - 1e-12)
            throw InvalidParameter("simulate: domain half-width must be at least 20 L");
    }

    const int n = 2 * static_cast<int>(std::lround(X / dx)) + 1;
    double dt = cfg.dt;
    if (dt <= 0.0) {
        // Each reaction step multiplies cell i by e^{r_i dt}; spatially rough
        // rates then imprint structure whose splitting bias scales with the
        // kick. Size dt so the strongest differential kick stays modest.
        dt = dx;
        if (b.has_atoms()) {
            double mmax = 0.0;
            for (const Atom& a : b.atoms()) mmax = std::max(mmax, a.mass);
            dt = dx / std::max(1.0, 4.0 * mmax);
        } else {
            const double spread = b.sup_deviation();
            if (std::isfinite(spread) && spread * dt > 0.0625)
                dt = 0.0625 / spread;
        }
    }
    const int steps = std::max(1, static_cast<int>(std::lround(cfg.t_end / dt)));
    dt = cfg.t_end / steps;

    Stepper stepper(b, -X, dx, n, dt, cfg.boundary, cfg.scheme, cfg.atom_scheme, cfg.exec);

    SimulationTrace trace;
    trace.domain_half_width = X;
    trace.dx = dx;
    trace.n = n;
    trace.period = L;
    trace.t_end = cfg.t_end;
    trace.threshold = cfg.front_threshold;

    std::vector<double> u(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double v = u0(-X + i * dx);
        if (!(v >= 0.0)) throw InvalidParameter("simulate: initial data must be nonnegative");
        u[static_cast<std::size_t>(i)] = v;
    }

    // snapshot schedule: uniform cadence plus a dense trailing window sized by
    // the shortest admissible wave period, for the periodicity diagnostics
    std::vector<int> snap_steps;
    const int count = std::max(1, cfg.snapshot_count);
    for (int k = 1; k <= count; ++k)
        snap_steps.push_back(static_cast<int>(std::lround(static_cast<double>(steps) * k / count)));
    const double period_ub = L / (2.0 * std::sqrt(alpha));
    const double window = 3.0 * period_ub;
    for (double t = std::max(0.0, cfg.t_end - window); t < cfg.t_end; t += period_ub / 16.0)
        snap_steps.push_back(static_cast<int>(std::lround(t / dt)));
    snap_steps.push_back(steps);
    std::sort(snap_steps.begin(), snap_steps.end());
    snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());
    while (!snap_steps.empty() && snap_steps.front() <= 0) snap_steps.erase(snap_steps.begin());

    const int front_every = std::max(1, static_cast<int>(std::lround(cfg.front_interval / dt)));
    const int guard = static_cast<int>(std::lround(2.0 * L / dx));

    // active support window: values below the floor are dynamically inert,
    // so the solves run only where the solution lives
    const double support_floor = 1e-80;
    const int margin = static_cast<int>(std::lround(4.0 * L / dx));
    const int chunk = static_cast<int>(std::lround(16.0 * L / dx));
    int win_lo = 0, win_hi = n;
    {
        int first = n, last = -1;
        for (int i = 0; i < n; ++i) {
            if (u[static_cast<std::size_t>(i)] > support_floor) {
                if (first == n) first = i;
                last = i;
            }
        }
        if (last >= 0) {
            win_lo = std::max(0, first - chunk);
            win_hi = std::min(n, last + 1 + chunk);
            for (int i = 0; i < win_lo; ++i) u[static_cast<std::size_t>(i)] = 0.0;
            for (int i = win_hi; i < n; ++i) u[static_cast<std::size_t>(i)] = 0.0;
            stepper.set_window(win_lo, win_hi);
            win_lo = stepper.window_lo();
            win_hi = stepper.window_hi();
        }
    }
    auto maybe_grow_window = [&]() {
        if (win_lo == 0 && win_hi == n) return;
        bool grow_lo = false, grow_hi = false;
        for (int i = win_lo; i < std::min(win_hi, win_lo + margin); ++i)
            if (u[static_cast<std::size_t>(i)] > support_floor) {
                grow_lo = true;
                break;
            }
        for (int i = std::max(win_lo, win_hi - margin); i < win_hi; ++i)
            if (u[static_cast<std::size_t>(i)] > support_floor) {
                grow_hi = true;
                break;
            }
        if (grow_lo || grow_hi) {
            stepper.set_window(grow_lo ? win_lo - chunk : win_lo,
                               grow_hi ? win_hi + chunk : win_hi);
            win_lo = stepper.window_lo();
            win_hi = stepper.window_hi();
        }
    };

    auto record_snapshot = [&](double t) {
        trace.times.push_back(t);
        trace.snapshots.push_back(u);
        double sup = 0.0;
        for (double v : u) sup = std::max(sup, std::abs(v));
        trace.sup_norms.push_back(sup);
    };
    auto check_contamination = [&](double t) {
        if (trace.contaminated) return;
        for (int i = 0; i < guard; ++i) {
            if (u[static_cast<std::size_t>(i)] > 1e-8 ||
                u[static_cast<std::size_t>(n - 1 - i)] > 1e-8) {
                trace.contaminated = true;
                trace.contamination_time = t;
                return;
            }
        }
    };

    std::size_t next_snap = 0;
    std::vector<double> prefix;
    for (int s = 1; s <= steps; ++s) {
        stepper.step(u, s <= cfg.smoothing_steps && cfg.scheme == Scheme::strang_cn);
        const double t = s * dt;
        if (s % front_every == 0 || s == steps) {
            trace.front.push_back(
                extract_front(u, -X, dx, L, t, cfg.front_threshold, prefix));
            check_contamination(t);
            maybe_grow_window();
        }
        while (next_snap < snap_steps.size() && snap_steps[next_snap] == s) {
            record_snapshot(t);
            ++next_snap;
        }
    }
    trace.min_seen = stepper.min_seen();
    return trace;
}

SimulationTrace simulate(const PeriodicCoefficient& b, const SimulationConfig& cfg) {
    const double L = b.period();
    const double dx = (cfg.grid_dx > 0.0) ? cfg.grid_dx : L / 512.0;
    auto bump = [L, dx](double x) {
        const double a = std::abs(x);
        if (a <= 0.5 * L) return 1.0;
        return std::max(0.0, 1.0 - (a - 0.5 * L) / dx);
    };
    return simulate(b, bump, cfg);
}

double continuous_dependence_probe(const PeriodicCoefficient& b,
                                   const std::function<double(double)>& u0,
                                   const std::function<double(double)>& v0, double t,
                                   SimulationConfig cfg) {
    cfg.t_end = t;
    cfg.snapshot_count = 1;
    const SimulationTrace tu = simulate(b, u0, cfg);
    const SimulationTrace tv = simulate(b, v0, cfg);
    double num = 0.0, den = 0.0;
    const auto& uf = tu.snapshots.back();
    const auto& vf = tv.snapshots.back();
    for (int i = 0; i < tu.n; ++i) {
        const double x = tu.x(i);
        den = std::max(den, std::abs(u0(x) - v0(x)));
        num = std::max(num, std::abs(uf[static_cast<std::size_t>(i)] -
                                     vf[static_cast<std::size_t>(i)]));
    }
    if (den == 0.0)
        throw InvalidParameter("continuous_dependence_probe: identical initial data");
    return num / den;
}

}  // namespace kpp
