#pragma once

#include <utility>

#include "kpp/coefficient.hpp"
#include "kpp/eigen.hpp"
#include "kpp/exec.hpp"

namespace kpp {

enum class Direction { positive, negative };
enum class MuMethod { fd, evolution, floquet };

struct SpeedResult {
    double c_star = 0.0;
    double lambda_star = 0.0;
    Direction direction = Direction::positive;
    double mu_at_star = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    MuMethod method = MuMethod::fd;
    double tolerance_achieved = 0.0;  // final bracket width in lambda
    bool scan_unimodal = true;
};

struct SpeedConfig {
    SolverConfig solver;
    int scan_points = 48;
    double lambda_tol = 1e-7;  // golden-section bracket width
    Exec exec = Exec::openmp;
};

/// Evaluate mu(lambda, b) by the transfer-matrix solver when the coefficient
/// is piecewise/atomic, by finite differences otherwise (falling back to the
/// evolution operator if the FD branch loses positivity).
double eigen_mu(const PeriodicCoefficient& b, double lambda, const SolverConfig& cfg,
                MuMethod* used = nullptr);

/// Minimal speed min_{lambda>0} (lambda^2 - mu(+-lambda, b)) / lambda:
/// a 48-point geometric scan over [0.5 sqrt(alpha), 2 sqrt(alpha+alpha^2 L^2)]
/// guards against non-unimodal profiles, then golden-section refinement on
/// the bracketing triple. Ties break toward the smallest lambda.
SpeedResult minimal_speed(const PeriodicCoefficient& b,
                          Direction direction = Direction::positive,
                          const SpeedConfig& cfg = {});

/// c*(h) - c*(b) against the Dirac comb with the same (alpha, L).
double speed_gap_to_optimum(const PeriodicCoefficient& b, const SpeedConfig& cfg = {});

/// Both directions computed independently; they must agree (adjointness).
std::pair<double, double> direction_symmetry_check(const PeriodicCoefficient& b,
                                                   const SpeedConfig& cfg = {});

}  // namespace kpp
