#pragma once

#include <cstdint>
#include <vector>

#include "kpp/coefficient.hpp"
#include "kpp/exec.hpp"

namespace kpp {

/// 2x2 real matrix acting on (psi, psi') states.
struct Mat2 {
    double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;

    friend Mat2 operator*(const Mat2& A, const Mat2& B) {
        return {A.a11 * B.a11 + A.a12 * B.a21, A.a11 * B.a12 + A.a12 * B.a22,
                A.a21 * B.a11 + A.a22 * B.a21, A.a21 * B.a12 + A.a22 * B.a22};
    }
    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
};

/// Exact state-transition matrix of psi'' - 2*lambda*psi' + (mu + level)*psi = 0
/// over an interval of the given length (all three root regimes in closed form).
Mat2 interval_propagator(double level, double length, double lambda, double mu);

/// Jump factor of a point mass: psi continuous, psi' drops by mass * psi.
Mat2 atom_jump(double mass);

/// State-transition matrix across one full period (segments and jumps in
/// spatial order). Requires a coefficient without smooth-sampled part.
Mat2 monodromy(const PeriodicCoefficient& b, double lambda, double mu);

/// Dispersion function g(lambda, mu) = tr M - 1 - exp(2*lambda*L); its root in
/// mu is the principal eigenvalue. The normalized residual |g|/(1+e^{2 lambda L})
/// of the returned root is available through dispersion_residual.
double dispersion_g(const PeriodicCoefficient& b, double lambda, double mu);

/// Principal eigenvalue of the periodic problem by bracketed bisection on
/// g(lambda, .), followed by a positivity certificate for the eigenfunction
/// (sampled at 64 interior points per piece).
double dispersion_mu(const PeriodicCoefficient& b, double lambda);

double dispersion_residual(const PeriodicCoefficient& b, double lambda, double mu);

/// Tabulated lambda -> mu(lambda, b) map.
struct DispersionCurve {
    std::vector<double> lambdas;
    std::vector<double> mus;
    std::vector<double> residuals;
    std::uint64_t b_hash = 0;
    std::vector<double> failed_lambdas;
};

DispersionCurve dispersion_curve(const PeriodicCoefficient& b,
                                 const std::vector<double>& lambdas,
                                 Exec exec = Exec::openmp);

}  // namespace kpp
