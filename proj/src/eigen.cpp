#include "kpp/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "kpp/errors.hpp"
#include "kpp/tridiag.hpp"

namespace kpp {

void DiscreteOperator::apply(const std::vector<double>& x, std::vector<double>& out) const {
    const std::size_t m = static_cast<std::size_t>(n);
    out.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double xm = x[(i + m - 1) % m];
        const double xp = x[(i + 1) % m];
        out[i] = sub * xm + diag(static_cast<int>(i)) * x[i] + sup * xp;
    }
}

DiscreteOperator build_operator(const PeriodicCoefficient& b, double lambda, int n,
                                AtomScheme scheme) {
    if (n < 64) throw InvalidParameter("eigensolver grids need at least 64 nodes");
    DiscreteOperator op;
    op.n = n;
    op.dx = b.period() / static_cast<double>(n);
    op.rates = b.node_rates(n, scheme);
    const double dx = op.dx;
    if (std::abs(lambda) * dx <= 1.0) {
        op.sub = -1.0 / (dx * dx) - lambda / dx;
        op.sup = -1.0 / (dx * dx) + lambda / dx;
        op.diag_base = 2.0 / (dx * dx);
    } else {
        // Exponential fitting: exact on the kernel {1, e^{2 lambda x}} of the
        // constant-coefficient drift operator, keeps the stencil an M-matrix.
        const double q = 2.0 * lambda * dx;
        const double c = q / (dx * dx * std::expm1(q));
        op.sub = -c * std::exp(q);
        op.sup = -c;
        op.diag_base = -(op.sub + op.sup);
    }
    return op;
}

namespace {

struct PowerResult {
    std::vector<double> vec;
    double step_ratio = 0.0;
    int iterations = 0;
};

/// Power iteration with a prefactored solve representing one application of
/// the positive operator. Returns the dominant per-step multiplier.
PowerResult resolvent_power_iteration(const CyclicTridiagFactor& factor, int n,
                                      double tol, int max_iterations) {
    std::vector<double> v(static_cast<std::size_t>(n), 1.0);
    std::vector<double> w(static_cast<std::size_t>(n));
    double ratio_prev = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        factor.solve(v, w);
        double vmax = 0.0;
        for (double x : w) vmax = std::max(vmax, std::abs(x));
        if (!(vmax > 0.0) || !std::isfinite(vmax))
            throw IterationLimit("power iteration produced a degenerate vector", vmax);
        double diff = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] /= vmax;
            diff = std::max(diff, std::abs(w[i] - v[i]));
        }
        v.swap(w);
        const double ratio_ok = std::abs(vmax - ratio_prev) <= tol * vmax;
        ratio_prev = vmax;
        if (diff <= tol && ratio_ok && it > 2)
            return {std::move(v), vmax, it};
    }
    throw IterationLimit("power iteration did not converge", ratio_prev);
}

CyclicTridiagFactor factor_shifted(const DiscreteOperator& op, double shift_diag_add,
                                   double scale) {
    // Factors scale*(A + shift_diag_add*I) ... used as (A - sigma I) with
    // scale 1, or (I + dt A) with scale dt and shift 1/dt on the diagonal.
    const std::size_t m = static_cast<std::size_t>(op.n);
    std::vector<double> lower(m - 1, scale * op.sub);
    std::vector<double> upper(m - 1, scale * op.sup);
    std::vector<double> diag(m);
    for (std::size_t i = 0; i < m; ++i)
        diag[i] = scale * (op.diag(static_cast<int>(i)) + shift_diag_add);
    return {lower, diag, upper, scale * op.sub, scale * op.sup};
}

double rayleigh_quotient(const DiscreteOperator& op, const std::vector<double>& v,
                         std::vector<double>& work) {
    op.apply(v, work);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        num += v[i] * work[i];
        den += v[i] * v[i];
    }
    return num / den;
}

double inf_residual(const DiscreteOperator& op, const std::vector<double>& v, double mu,
                    std::vector<double>& work) {
    op.apply(v, work);
    double r = 0.0, vmax = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        r = std::max(r, std::abs(work[i] - mu * v[i]));
        vmax = std::max(vmax, std::abs(v[i]));
    }
    return r / vmax;
}

}  // namespace

EigenPair principal_eigenpair_fd(const PeriodicCoefficient& b, double lambda,
                                 const SolverConfig& cfg) {
    if (!std::isfinite(lambda)) throw InvalidParameter("lambda must be finite");
    const DiscreteOperator op = build_operator(b, lambda, cfg.grid_n, cfg.atom_scheme);
    const double alpha = b.alpha();
    const double L = b.period();
    const double sigma = -alpha - alpha * alpha * L * L - 1.0;

    const CyclicTridiagFactor factor = factor_shifted(op, -sigma, 1.0);
    const std::size_t m = static_cast<std::size_t>(op.n);
    // the stencil magnitude caps how small the infinity-norm residual can get
    // in double precision
    double opnorm = 0.0;
    for (int i = 0; i < op.n; ++i) opnorm = std::max(opnorm, std::abs(op.diag(i)));
    opnorm += std::abs(op.sub) + std::abs(op.sup);
    const double tol = std::max(cfg.tolerance,
                                64.0 * std::numeric_limits<double>::epsilon() * opnorm);

    std::vector<double> v(m, 1.0), w(m), work(m);
    double mu = 0.0, res = 0.0;
    bool converged = false;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        factor.solve(v, w);
        // renormalize so the largest-magnitude entry becomes +1
        std::size_t imax = 0;
        for (std::size_t i = 1; i < m; ++i)
            if (std::abs(w[i]) > std::abs(w[imax])) imax = i;
        const double scale = 1.0 / w[imax];
        if (!std::isfinite(scale)) throw IterationLimit("inverse iteration degenerated", res);
        for (std::size_t i = 0; i < m; ++i) w[i] *= scale;
        v.swap(w);
        mu = rayleigh_quotient(op, v, work);
        res = inf_residual(op, v, mu, work);
        if (res <= tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw IterationLimit("principal_eigenpair_fd: no convergence", res);
    const double vmin = *std::min_element(v.begin(), v.end());
    if (!(vmin > 0.0))
        throw SpuriousMode("principal_eigenpair_fd: eigenvector changes sign");

    EigenPair pair;
    pair.lambda = lambda;
    pair.mu = mu;
    pair.psi = std::move(v);
    pair.grid_n = op.n;
    pair.method = EigenMethod::fd;
    pair.residual = res;
    return pair;
}

EigenPair principal_eigenpair_evolution(const PeriodicCoefficient& b, double lambda,
                                        double t, const SolverConfig& cfg) {
    if (!(t > 0.0)) throw InvalidParameter("evolution time must be positive");
    const DiscreteOperator op = build_operator(b, lambda, cfg.grid_n, cfg.atom_scheme);
    double max_rate = 0.0;
    for (double r : op.rates) max_rate = std::max(max_rate, r);

    double dt = cfg.evolution_dt;
    if (dt <= 0.0) {
        dt = 0.5 * op.dx;
        if (max_rate > 0.0) dt = std::min(dt, 0.5 / max_rate);
    } else if (dt * max_rate >= 1.0) {
        // The backward-Euler resolvent stops being inverse-positive.
        throw StabilityError("principal_eigenpair_evolution: dt too large for the reaction rate");
    }

    auto mu_of_dt = [&](double step) {
        const CyclicTridiagFactor factor = factor_shifted(op, 1.0 / step, step);
        PowerResult pr =
            resolvent_power_iteration(factor, op.n, cfg.tolerance, cfg.max_iterations);
        // rho_step = 1/(1 + dt mu_A); report the Prop.-of-the-semigroup value
        // -ln(rho)/t, which is independent of t for a composed operator.
        return std::make_pair(std::log1p(-1.0 + 1.0 / pr.step_ratio) / step, std::move(pr));
    };
    auto [mu_coarse, run_coarse] = mu_of_dt(dt);
    auto [mu_fine, run_fine] = mu_of_dt(0.5 * dt);
    const double mu = 2.0 * mu_fine - mu_coarse;  // removes the O(dt) stepping bias

    std::vector<double> psi = std::move(run_fine.vec);
    const double pmin = *std::min_element(psi.begin(), psi.end());
    if (!(pmin > 0.0))
        throw SpuriousMode("principal_eigenpair_evolution: lost positivity");
    std::vector<double> work;
    const double res = inf_residual(op, psi, mu, work);

    EigenPair pair;
    pair.lambda = lambda;
    pair.mu = mu;
    pair.psi = std::move(psi);
    pair.grid_n = op.n;
    pair.method = EigenMethod::evolution;
    pair.residual = res;
    return pair;
}

double rayleigh_mu0(const PeriodicCoefficient& b, const std::vector<double>& psi) {
    const std::size_t k = psi.size();
    if (k < 16) throw InvalidParameter("rayleigh_mu0: need at least 16 samples");
    for (double p : psi)
        if (!(p > 0.0)) throw InvalidParameter("rayleigh_mu0: trial function must be positive");
    const double L = b.period();
    const double dxs = L / static_cast<double>(k);
    const std::vector<double> rates = b.continuous_node_rates(static_cast<int>(k));

    double grad = 0.0, pot = 0.0, den = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double d = psi[(i + 1) % k] - psi[i];
        grad += d * d / dxs;
        pot += rates[i] * psi[i] * psi[i] * dxs;
        den += psi[i] * psi[i] * dxs;
    }
    // pointwise evaluation of the piecewise-linear trial at the atoms
    auto psi_at = [&](double x) {
        const double s = x / dxs;
        std::size_t i = static_cast<std::size_t>(s);
        const double theta = s - static_cast<double>(i);
        i %= k;
        return psi[i] * (1.0 - theta) + psi[(i + 1) % k] * theta;
    };
    for (const Atom& a : b.atoms()) {
        const double p = psi_at(a.position);
        pot += a.mass * p * p;
    }
    return (grad - pot) / den;
}

double maxmin_check(const PeriodicCoefficient& b, const EigenPair& pair) {
    if (b.has_atoms())
        throw UnsupportedInput("maxmin_check: pointwise quotient needs an atom-free profile");
    if (static_cast<int>(pair.psi.size()) != pair.grid_n)
        throw InvalidParameter("maxmin_check: eigenpair grid mismatch");
    const DiscreteOperator op =
        build_operator(b, pair.lambda, pair.grid_n, AtomScheme::lump);
    std::vector<double> Ap;
    op.apply(pair.psi, Ap);
    double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pair.psi.size(); ++i)
        inf = std::min(inf, Ap[i] / pair.psi[i]);
    return inf;
}

}  // namespace kpp
