#include "kpp/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "kpp/errors.hpp"

namespace kpp {

namespace {

/// Piece list of an atom/piecewise-constant coefficient: constant-level
/// segments in spatial order, each optionally terminated by a point mass.
struct Piece {
    double length;
    double level;
    double atom_mass;  // 0 when the segment ends without a jump
};

std::vector<Piece> piece_list(const PeriodicCoefficient& b) {
    if (b.has_smooth_part())
        throw UnsupportedInput("transfer-matrix solver needs a piecewise or atomic profile");
    const double L = b.period();
    std::vector<double> events{0.0};
    for (const Atom& a : b.atoms()) events.push_back(a.position);
    if (b.has_continuous_part())
        for (double bp : std::get<PiecewiseConstant>(*b.continuous()).breakpoints)
            if (bp > 0.0 && bp < L) events.push_back(bp);
    events.push_back(L);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    std::vector<Piece> pieces;
    for (std::size_t j = 0; j + 1 < events.size(); ++j) {
        const double a = events[j], c = events[j + 1];
        double mass = 0.0;
        for (const Atom& atom : b.atoms())
            if (atom.position == c) mass = atom.mass;
        pieces.push_back({c - a, b.value(0.5 * (a + c)), mass});
    }
    return pieces;
}

}  // namespace

Mat2 interval_propagator(double level, double length, double lambda, double mu) {
    if (!(length > 0.0)) throw InvalidParameter("interval_propagator: length must be positive");
    // psi'' = 2*lambda*psi' - (mu + level)*psi; companion matrix lambda*I + S
    // with S = [[-lambda, 1], [-(mu+level), lambda]], S^2 = q*I.
    const double k = mu + level;
    const double q = lambda * lambda - k;
    const double el = std::exp(lambda * length);
    double ch, shs;  // cosh-type and sinh(s l)/s factors for the three regimes
    if (q > 0.0) {
        const double s = std::sqrt(q);
        ch = std::cosh(s * length);
        shs = std::sinh(s * length) / s;
    } else if (q < 0.0) {
        const double w = std::sqrt(-q);
        ch = std::cos(w * length);
        shs = std::sin(w * length) / w;
    } else {
        ch = 1.0;
        shs = length;
    }
    return {el * (ch - lambda * shs), el * shs, el * (-k * shs), el * (ch + lambda * shs)};
}

Mat2 atom_jump(double mass) {
    if (!(mass > 0.0)) throw InvalidParameter("atom_jump: mass must be positive");
    return {1.0, 0.0, -mass, 1.0};
}

Mat2 monodromy(const PeriodicCoefficient& b, double lambda, double mu) {
    Mat2 M;
    for (const Piece& p : piece_list(b)) {
        M = interval_propagator(p.level, p.length, lambda, mu) * M;
        if (p.atom_mass > 0.0) M = atom_jump(p.atom_mass) * M;
    }
    return M;
}

double dispersion_g(const PeriodicCoefficient& b, double lambda, double mu) {
    return monodromy(b, lambda, mu).trace() - 1.0 - std::exp(2.0 * lambda * b.period());
}

double dispersion_residual(const PeriodicCoefficient& b, double lambda, double mu) {
    return std::abs(dispersion_g(b, lambda, mu)) /
           (1.0 + std::exp(2.0 * lambda * b.period()));
}

namespace {

/// Certify that the eigenvector of M for eigenvalue 1 generates a positive
/// periodic eigenfunction, sampling 64 interior points per piece.
void certify_positive(const PeriodicCoefficient& b, double lambda, double mu) {
    const Mat2 M = monodromy(b, lambda, mu);
    // (M - I) v = 0; take the better-conditioned null direction.
    const double r1 = std::hypot(M.a11 - 1.0, M.a12);
    const double r2 = std::hypot(M.a21, M.a22 - 1.0);
    double v0, v1;
    if (r1 >= r2) {
        v0 = M.a12;
        v1 = 1.0 - M.a11;
    } else {
        v0 = 1.0 - M.a22;
        v1 = M.a21;
    }
    if (v0 == 0.0 && v1 == 0.0) throw PrincipalBranchError("degenerate eigenvector");
    if (v0 < 0.0) {
        v0 = -v0;
        v1 = -v1;
    }
    if (v0 <= 0.0) throw PrincipalBranchError("eigenfunction vanishes at the cell origin");

    Mat2 carry;
    for (const Piece& p : piece_list(b)) {
        for (int s = 1; s <= 64; ++s) {
            const Mat2 T = interval_propagator(p.level, p.length * s / 64.0, lambda, mu) * carry;
            if (T.a11 * v0 + T.a12 * v1 <= 0.0)
                throw PrincipalBranchError("eigenfunction is not positive across the cell");
        }
        carry = interval_propagator(p.level, p.length, lambda, mu) * carry;
        if (p.atom_mass > 0.0) carry = atom_jump(p.atom_mass) * carry;
    }
}

}  // namespace

double dispersion_mu(const PeriodicCoefficient& b, double lambda) {
    const double alpha = b.alpha();
    const double L = b.period();
    const double band = alpha * alpha * L * L;

    double lo = -alpha - band - 0.5;
    double hi = -alpha + 0.5;
    double glo = dispersion_g(b, lambda, lo);
    double ghi = dispersion_g(b, lambda, hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if (glo * ghi > 0.0) {
        lo -= band + 1.0;
        hi += band + 1.0;
        glo = dispersion_g(b, lambda, lo);
        ghi = dispersion_g(b, lambda, hi);
        if (glo * ghi > 0.0)
            throw BracketFailure("dispersion_mu: no sign change in the widened bracket");
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double gm = dispersion_g(b, lambda, mid);
        if (gm == 0.0) {
            lo = hi = mid;
            break;
        }
        if (gm * glo < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            glo = gm;
        }
    }
    const double mu = 0.5 * (lo + hi);
    certify_positive(b, lambda, mu);
    return mu;
}

DispersionCurve dispersion_curve(const PeriodicCoefficient& b,
                                 const std::vector<double>& lambdas, Exec exec) {
    DispersionCurve curve;
    curve.lambdas = lambdas;
    curve.b_hash = b.hash();
    const std::size_t n = lambdas.size();
    curve.mus.assign(n, std::numeric_limits<double>::quiet_NaN());
    curve.residuals.assign(n, std::numeric_limits<double>::quiet_NaN());
    std::vector<char> failed(n, 0);
    parallel_for(static_cast<std::ptrdiff_t>(n), exec, [&](std::ptrdiff_t i) {
        try {
            const double mu = dispersion_mu(b, lambdas[static_cast<std::size_t>(i)]);
            curve.mus[static_cast<std::size_t>(i)] = mu;
            curve.residuals[static_cast<std::size_t>(i)] =
                dispersion_residual(b, lambdas[static_cast<std::size_t>(i)], mu);
        } catch (const std::exception&) {
            failed[static_cast<std::size_t>(i)] = 1;
        }
    });
    for (std::size_t i = 0; i < n; ++i)
        if (failed[i]) curve.failed_lambdas.push_back(lambdas[i]);
    return curve;
}

}  // namespace kpp
