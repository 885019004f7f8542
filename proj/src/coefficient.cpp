#include "kpp/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <sstream>

#include "kpp/errors.hpp"

namespace kpp {

namespace {

constexpr double kMassRelTol = 1e-12;

double wrap_position(double x, double L) {
    double y = std::fmod(x, L);
    if (y < 0.0) y += L;
    return y;
}

/// Piecewise-linear periodic evaluation of uniform samples.
double samples_value(const std::vector<double>& v, double L, double x) {
    const std::size_t n = v.size();
    const double s = wrap_position(x, L) / (L / static_cast<double>(n));
    std::size_t i = static_cast<std::size_t>(s);
    if (i >= n) i = n - 1;
    const double theta = s - static_cast<double>(i);
    return v[i] * (1.0 - theta) + v[(i + 1) % n] * theta;
}

/// Exact integral of the piecewise-linear interpolant over [lo, hi],
/// 0 <= lo <= hi <= 2L.
double samples_integral(const std::vector<double>& v, double L, double lo, double hi) {
    const std::size_t n = v.size();
    const double dx = L / static_cast<double>(n);
    auto antiderivative_in_cell = [&](double x) {
        // integral from cell start to x, x inside cell i
        const double s = x / dx;
        std::size_t i = static_cast<std::size_t>(s);
        const std::size_t ip = i % n;
        const double t = (s - static_cast<double>(i)) * dx;
        const double slope = (v[(ip + 1) % n] - v[ip]) / dx;
        return v[ip] * t + 0.5 * slope * t * t;
    };
    auto cumulative = [&](double x) {
        // integral of the periodic extension from 0 to x in [0, 2L]
        double total = 0.0;
        const double cell_count = std::floor(x / dx * (1.0 + 1e-16));
        std::size_t full = static_cast<std::size_t>(cell_count);
        for (std::size_t k = 0; k < full; ++k)
            total += 0.5 * (v[k % n] + v[(k + 1) % n]) * dx;
        const double rem = x - static_cast<double>(full) * dx;
        if (rem > 0.0) total += antiderivative_in_cell(x);
        return total;
    };
    return cumulative(hi) - cumulative(lo);
}

double piecewise_value(const PiecewiseConstant& p, double L, double x) {
    const double y = wrap_position(x, L);
    const auto& bp = p.breakpoints;
    auto it = std::upper_bound(bp.begin(), bp.end(), y);
    if (it == bp.begin()) return p.levels.back();  // before the first breakpoint: wrap
    return p.levels[static_cast<std::size_t>(it - bp.begin()) - 1];
}

/// Exact integral of the periodic piecewise-constant profile over [lo, hi],
/// 0 <= lo <= hi <= 2L.
double piecewise_integral(const PiecewiseConstant& p, double L, double lo, double hi) {
    // Build the event list over one period once per call; profiles are small.
    const auto& bp = p.breakpoints;
    const std::size_t m = bp.size();
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double a = bp[k];
        const double c = (k + 1 < m) ? bp[k + 1] : bp[0] + L;  // wraps past L
        const double lv = p.levels[k];
        for (int image = -1; image < 3; ++image) {
            const double s = a + L * image;
            const double e = c + L * image;
            const double left = std::max(lo, s);
            const double right = std::min(hi, e);
            if (right > left) total += lv * (right - left);
        }
    }
    return total;
}

}  // namespace

PeriodicCoefficient::PeriodicCoefficient(double L, double alpha,
                                         std::optional<ContinuousPart> cont,
                                         std::vector<Atom> atoms)
    : period_(L), alpha_(alpha), continuous_(std::move(cont)), atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.position < b.position; });
    validate();
}

void PeriodicCoefficient::validate() const {
    if (!(period_ > 0.0) || !std::isfinite(period_))
        throw InvalidParameter("period must be positive");
    if (!(alpha_ > 0.0) || !std::isfinite(alpha_))
        throw InvalidParameter("alpha must be positive");
    if (continuous_) {
        if (const auto* s = std::get_if<SmoothSamples>(&*continuous_)) {
            if (s->values.size() < 16)
                throw InvalidParameter("sampled profiles need at least 16 samples");
            for (double v : s->values)
                if (!(v >= 0.0) || !std::isfinite(v))
                    throw InvalidParameter("coefficient values must be nonnegative");
        } else {
            const auto& p = std::get<PiecewiseConstant>(*continuous_);
            if (p.breakpoints.empty() || p.breakpoints.size() != p.levels.size())
                throw InvalidParameter("piecewise profile needs matching breakpoints and levels");
            if (!std::is_sorted(p.breakpoints.begin(), p.breakpoints.end()))
                throw InvalidParameter("breakpoints must be increasing");
            if (p.breakpoints.front() < 0.0 || p.breakpoints.back() >= period_)
                throw InvalidParameter("breakpoints must lie in [0, L)");
            if (std::adjacent_find(p.breakpoints.begin(), p.breakpoints.end()) !=
                p.breakpoints.end())
                throw InvalidParameter("breakpoints must be distinct");
            for (double lv : p.levels)
                if (!(lv >= 0.0) || !std::isfinite(lv))
                    throw InvalidParameter("levels must be nonnegative");
        }
    }
    for (const Atom& a : atoms_) {
        if (!(a.mass > 0.0) || !std::isfinite(a.mass))
            throw InvalidParameter("atom masses must be positive");
        if (!(a.position > 0.0) || !(a.position < period_))
            throw InvalidParameter("atom positions must lie strictly inside the open cell");
    }
    for (std::size_t i = 1; i < atoms_.size(); ++i)
        if (atoms_[i].position == atoms_[i - 1].position)
            throw InvalidParameter("atom positions must be pairwise distinct");

    const double target = alpha_ * period_;
    if (std::abs(mass() - target) > kMassRelTol * target)
        throw InvalidParameter("cell mass does not match alpha * L");
}

double PeriodicCoefficient::continuous_mass() const {
    if (!continuous_) return 0.0;
    if (const auto* s = std::get_if<SmoothSamples>(&*continuous_)) {
        const double dx = period_ / static_cast<double>(s->values.size());
        return dx * std::accumulate(s->values.begin(), s->values.end(), 0.0);
    }
    const auto& p = std::get<PiecewiseConstant>(*continuous_);
    return piecewise_integral(p, period_, 0.0, period_);
}

double PeriodicCoefficient::mass() const {
    double total = continuous_mass();
    for (const Atom& a : atoms_) total += a.mass;
    return total;
}

bool PeriodicCoefficient::has_smooth_part() const {
    return continuous_ && std::holds_alternative<SmoothSamples>(*continuous_);
}

bool PeriodicCoefficient::is_constant(double rel_tol) const {
    return !has_atoms() && sup_deviation() <= rel_tol * alpha_;
}

double PeriodicCoefficient::value(double x) const {
    if (!continuous_) return 0.0;
    if (const auto* s = std::get_if<SmoothSamples>(&*continuous_))
        return samples_value(s->values, period_, x);
    return piecewise_value(std::get<PiecewiseConstant>(*continuous_), period_, x);
}

double PeriodicCoefficient::cell_average(double lo, double hi) const {
    if (!(hi > lo)) throw InvalidParameter("cell_average needs hi > lo");
    if (hi - lo > period_) throw InvalidParameter("cell_average window exceeds one period");
    if (!continuous_) return 0.0;
    const double shift = std::floor(lo / period_) * period_;
    lo -= shift;
    hi -= shift;
    double integral;
    if (const auto* s = std::get_if<SmoothSamples>(&*continuous_))
        integral = samples_integral(s->values, period_, lo, hi);
    else
        integral = piecewise_integral(std::get<PiecewiseConstant>(*continuous_), period_, lo, hi);
    return integral / (hi - lo);
}

double PeriodicCoefficient::sup_deviation() const {
    if (has_atoms()) return std::numeric_limits<double>::infinity();
    if (!continuous_) return alpha_;
    double dev = 0.0;
    if (const auto* s = std::get_if<SmoothSamples>(&*continuous_)) {
        for (double v : s->values) dev = std::max(dev, std::abs(v - alpha_));
    } else {
        for (double lv : std::get<PiecewiseConstant>(*continuous_).levels)
            dev = std::max(dev, std::abs(lv - alpha_));
    }
    return dev;
}

std::vector<double> PeriodicCoefficient::continuous_node_rates(int n) const {
    if (n < 16) throw InvalidParameter("grids need at least 16 nodes");
    std::vector<double> rates(static_cast<std::size_t>(n), 0.0);
    if (!continuous_) return rates;
    const double dx = period_ / static_cast<double>(n);
    if (const auto* s = std::get_if<SmoothSamples>(&*continuous_)) {
        for (int i = 0; i < n; ++i)
            rates[static_cast<std::size_t>(i)] = samples_value(s->values, period_, i * dx);
    } else {
        for (int i = 0; i < n; ++i)
            rates[static_cast<std::size_t>(i)] =
                cell_average(i * dx - 0.5 * dx + period_, i * dx + 0.5 * dx + period_);
    }
    return rates;
}

std::vector<double> PeriodicCoefficient::node_rates(int n, AtomScheme scheme) const {
    std::vector<double> rates = continuous_node_rates(n);
    const double dx = period_ / static_cast<double>(n);
    for (const Atom& a : atoms_) {
        const double s = a.position / dx;
        if (scheme == AtomScheme::lump) {
            const std::size_t j = static_cast<std::size_t>(std::floor(s + 0.5)) %
                                  static_cast<std::size_t>(n);
            rates[j] += a.mass / dx;
        } else {
            std::size_t j0 = static_cast<std::size_t>(std::floor(s));
            const double theta = s - static_cast<double>(j0);
            j0 %= static_cast<std::size_t>(n);
            rates[j0] += a.mass * (1.0 - theta) / dx;
            rates[(j0 + 1) % static_cast<std::size_t>(n)] += a.mass * theta / dx;
        }
    }
    return rates;
}

double PeriodicCoefficient::min_atom_gap() const {
    if (atoms_.size() < 2) return period_;
    double gap = atoms_.front().position + period_ - atoms_.back().position;
    for (std::size_t i = 1; i < atoms_.size(); ++i)
        gap = std::min(gap, atoms_[i].position - atoms_[i - 1].position);
    return gap;
}

PeriodicCoefficient PeriodicCoefficient::rotate_frame(double shift) const {
    std::vector<Atom> atoms = atoms_;
    for (Atom& a : atoms) {
        a.position = wrap_position(a.position - shift, period_);
        if (a.position == 0.0) a.position = period_ * (1.0 - 1e-15);
    }
    std::optional<ContinuousPart> cont;
    if (continuous_) {
        if (const auto* s = std::get_if<SmoothSamples>(&*continuous_)) {
            const std::size_t n = s->values.size();
            const double dx = period_ / static_cast<double>(n);
            std::vector<double> values(n);
            for (std::size_t i = 0; i < n; ++i)
                values[i] = samples_value(s->values, period_,
                                          static_cast<double>(i) * dx + shift);
            cont = SmoothSamples{std::move(values)};
        } else {
            const auto& p = std::get<PiecewiseConstant>(*continuous_);
            std::vector<std::pair<double, double>> segs;
            for (std::size_t k = 0; k < p.breakpoints.size(); ++k)
                segs.emplace_back(wrap_position(p.breakpoints[k] - shift, period_),
                                  p.levels[k]);
            std::sort(segs.begin(), segs.end());
            PiecewiseConstant rot;
            for (auto& [bp, lv] : segs) {
                rot.breakpoints.push_back(bp);
                rot.levels.push_back(lv);
            }
            cont = std::move(rot);
        }
    }
    // Resampling may perturb the mass at roundoff level; rebuild with the
    // recomputed mean so the invariant holds by construction.
    PeriodicCoefficient out(period_, alpha_, std::move(cont), std::move(atoms));
    return out;
}

PeriodicCoefficient PeriodicCoefficient::make_constant(double alpha, double L, int n) {
    if (!(alpha > 0.0)) throw InvalidParameter("make_constant: alpha must be positive");
    if (!(L > 0.0)) throw InvalidParameter("make_constant: period must be positive");
    return {L, alpha, SmoothSamples{std::vector<double>(static_cast<std::size_t>(n), alpha)}, {}};
}

PeriodicCoefficient PeriodicCoefficient::make_delta_comb(double alpha, double L) {
    if (!(alpha > 0.0)) throw InvalidParameter("make_delta_comb: alpha must be positive");
    if (!(L > 0.0)) throw InvalidParameter("make_delta_comb: period must be positive");
    return {L, alpha, std::nullopt, {Atom{0.5 * L, alpha * L}}};
}

PeriodicCoefficient PeriodicCoefficient::make_shigesada(double alpha, double L,
                                                        double fraction, double contrast) {
    if (!(alpha > 0.0) || !(L > 0.0))
        throw InvalidParameter("make_shigesada: alpha and period must be positive");
    if (!(fraction > 0.0) || fraction > 1.0)
        throw InvalidParameter("make_shigesada: fraction must lie in (0, 1]");
    if (std::isnan(contrast) || contrast < 0.0)
        throw InvalidParameter("make_shigesada: contrast must be nonnegative");
    if (fraction == 1.0)
        return {L, alpha, PiecewiseConstant{{0.0}, {alpha}}, {}};
    double b1, b2;
    if (std::isinf(contrast)) {
        b1 = alpha / fraction;
        b2 = 0.0;
    } else {
        b2 = alpha / (fraction * contrast + 1.0 - fraction);
        b1 = contrast * b2;
    }
    if (b1 < 0.0 || b2 < 0.0)
        throw InvalidParameter("make_shigesada: infeasible levels");
    const double a = 0.5 * L * (1.0 - fraction);
    const double c = 0.5 * L * (1.0 + fraction);
    return {L, alpha, PiecewiseConstant{{a, c}, {b1, b2}}, {}};
}

PeriodicCoefficient PeriodicCoefficient::make_samples(double L, std::vector<double> values) {
    if (!(L > 0.0)) throw InvalidParameter("make_samples: period must be positive");
    const double dx = L / static_cast<double>(values.size());
    const double mass = dx * std::accumulate(values.begin(), values.end(), 0.0);
    return {L, mass / L, SmoothSamples{std::move(values)}, {}};
}

PeriodicCoefficient PeriodicCoefficient::make_piecewise(double L,
                                                        std::vector<double> breakpoints,
                                                        std::vector<double> levels) {
    if (!(L > 0.0)) throw InvalidParameter("make_piecewise: period must be positive");
    PiecewiseConstant p{std::move(breakpoints), std::move(levels)};
    const double mass = piecewise_integral(p, L, 0.0, L);
    return {L, mass / L, std::move(p), {}};
}

PeriodicCoefficient PeriodicCoefficient::make_atoms(double L, std::vector<Atom> atoms) {
    if (!(L > 0.0)) throw InvalidParameter("make_atoms: period must be positive");
    double mass = 0.0;
    for (const Atom& a : atoms) mass += a.mass;
    return {L, mass / L, std::nullopt, std::move(atoms)};
}

PeriodicCoefficient PeriodicCoefficient::make_mixture(double L, ContinuousPart continuous,
                                                      std::vector<Atom> atoms) {
    if (!(L > 0.0)) throw InvalidParameter("make_mixture: period must be positive");
    double mass = 0.0;
    if (const auto* s = std::get_if<SmoothSamples>(&continuous)) {
        const double dx = L / static_cast<double>(s->values.size());
        mass += dx * std::accumulate(s->values.begin(), s->values.end(), 0.0);
    } else {
        mass += piecewise_integral(std::get<PiecewiseConstant>(continuous), L, 0.0, L);
    }
    for (const Atom& a : atoms) mass += a.mass;
    return {L, mass / L, std::move(continuous), std::move(atoms)};
}

std::string PeriodicCoefficient::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "L=" << period_ << " alpha=" << alpha_;
    if (continuous_) {
        if (const auto* s = std::get_if<SmoothSamples>(&*continuous_))
            os << " samples[" << s->values.size() << "]";
        else
            os << " piecewise[" << std::get<PiecewiseConstant>(*continuous_).levels.size()
               << "]";
    }
    if (!atoms_.empty()) {
        os << " atoms[";
        for (const Atom& a : atoms_) os << "(" << a.position << "," << a.mass << ")";
        os << "]";
    }
    return os.str();
}

std::uint64_t PeriodicCoefficient::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double x) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(x));
        std::memcpy(&bits, &x, sizeof(bits));
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    mix(period_);
    mix(alpha_);
    if (continuous_) {
        if (const auto* s = std::get_if<SmoothSamples>(&*continuous_)) {
            for (double v : s->values) mix(v);
        } else {
            const auto& p = std::get<PiecewiseConstant>(*continuous_);
            for (double v : p.breakpoints) mix(v);
            for (double v : p.levels) mix(v);
        }
    }
    for (const Atom& a : atoms_) {
        mix(a.position);
        mix(a.mass);
    }
    return h;
}

PeriodicCoefficient mollify(const PeriodicCoefficient& b, const MollifierSpec& spec,
                            int n_out) {
    if (!b.has_atoms()) throw InvalidParameter("mollify: coefficient has no atoms");
    if (!(spec.width > 0.0)) throw InvalidParameter("mollify: width must be positive");
    const double L = b.period();
    if (spec.width >= b.min_atom_gap() || spec.width >= L)
        throw KernelOverlap("mollify: width reaches the next atom, bumps would merge");

    int n = n_out;
    if (n <= 0) {
        n = std::max(PeriodicCoefficient::default_samples,
                     static_cast<int>(std::ceil(48.0 * L / spec.width)));
        n = std::min(n, 1 << 17);
    }
    const double dx = L / static_cast<double>(n);

    std::vector<double> values(static_cast<std::size_t>(n), 0.0);
    if (b.has_continuous_part())
        for (int i = 0; i < n; ++i)
            values[static_cast<std::size_t>(i)] = b.value(i * dx);

    const double half = 0.5 * spec.width;
    const double sigma = spec.width / 6.0;
    std::vector<double> bump(static_cast<std::size_t>(n), 0.0);
    for (const Atom& a : b.atoms()) {
        for (int i = 0; i < n; ++i) {
            double d = std::abs(i * dx - a.position);
            d = std::min(d, L - d);
            if (d > half) continue;
            double k;
            if (spec.kernel == MollifierKernel::triangle)
                k = (2.0 * a.mass / spec.width) * (1.0 - d / half);
            else
                k = a.mass / (sigma * std::sqrt(2.0 * 3.14159265358979323846)) *
                    std::exp(-0.5 * (d / sigma) * (d / sigma));
            bump[static_cast<std::size_t>(i)] += k;
        }
    }
    // Sampling an off-grid bump misses mass at O(dx^2); rescale the bump part
    // so the cell mass is preserved exactly.
    double bump_mass = 0.0;
    for (double v : bump) bump_mass += v;
    bump_mass *= dx;
    double atom_mass = 0.0;
    for (const Atom& a : b.atoms()) atom_mass += a.mass;
    if (bump_mass <= 0.0) throw KernelOverlap("mollify: grid too coarse for the bumps");
    const double scale = atom_mass / bump_mass;
    for (int i = 0; i < n; ++i)
        values[static_cast<std::size_t>(i)] += scale * bump[static_cast<std::size_t>(i)];

    return PeriodicCoefficient::make_samples(L, std::move(values));
}

double weak_pairing(const PeriodicCoefficient& b, const std::vector<double>& eta) {
    if (eta.size() < 2) throw InvalidParameter("weak_pairing: eta needs at least 2 samples");
    const double L = b.period();
    const std::size_t k = eta.size();
    const double de = L / static_cast<double>(k);
    auto eta_at = [&](double x) { return samples_value(eta, L, x); };

    double total = 0.0;
    if (b.has_continuous_part()) {
        // Union partition of both representations; the product is polynomial
        // on each piece, integrated exactly.
        std::vector<double> cuts;
        cuts.reserve(k + 8);
        for (std::size_t i = 0; i <= k; ++i) cuts.push_back(static_cast<double>(i) * de);
        if (const auto* s = std::get_if<SmoothSamples>(&*b.continuous())) {
            const std::size_t n = s->values.size();
            for (std::size_t i = 1; i < n; ++i)
                cuts.push_back(static_cast<double>(i) * L / static_cast<double>(n));
        } else {
            for (double bp : std::get<PiecewiseConstant>(*b.continuous()).breakpoints)
                if (bp > 0.0) cuts.push_back(bp);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        const bool linear = b.has_smooth_part();
        for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
            const double a = cuts[j], c = cuts[j + 1];
            if (!(c > a)) continue;
            const double ea = eta_at(a), ec = eta_at(c);
            if (linear) {
                const double ba = b.value(a), bc = b.value(c);
                total += (c - a) / 6.0 * (ba * (2.0 * ea + ec) + bc * (ea + 2.0 * ec));
            } else {
                const double lv = b.value(0.5 * (a + c));
                total += lv * 0.5 * (ea + ec) * (c - a);
            }
        }
    }
    for (const Atom& a : b.atoms()) total += a.mass * eta_at(a.position);
    return total;
}

}  // namespace kpp
