#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "kpp/coefficient.hpp"
#include "kpp/speed.hpp"

namespace kpp {

struct ShigesadaFamily {
    std::vector<double> fractions;
    std::vector<double> contrasts;  // pairs are the cartesian product
};

struct MollifiedCombFamily {
    std::vector<double> epsilons;
    MollifierKernel kernel = MollifierKernel::triangle;
};

struct FourierRandomFamily {
    std::uint64_t seed = 1;
    int count = 200;
    double smoothness = 2.0;  // coefficient decay exponent
    int modes = 8;
};

using SweepFamily = std::variant<ShigesadaFamily, MollifiedCombFamily, FourierRandomFamily>;

struct SweepPlan {
    SweepFamily family;
    double alpha = 1.0;
    double L = 1.0;
    SpeedConfig speed;
    Exec exec = Exec::openmp;
};

struct SweepRecord {
    int index = 0;
    std::string descriptor;
    double c_star = 0.0;
    double lambda_star = 0.0;
    double mu_at_star = 0.0;
    double mu_scan_min = 0.0, mu_scan_max = 0.0;  // over the lambda scan
    double gap_to_h = 0.0;                         // c*(h) - c*(b), >= -1e-6
    MuMethod method = MuMethod::fd;
    double wall_ms = 0.0;
    bool ok = false;
    std::string error;
};

/// Deterministic batch study: every family member is validated, solved for
/// its minimal speed, and compared against the Dirac-comb optimum.
std::vector<SweepRecord> run_sweep(const SweepPlan& plan);

std::string sweep_csv(const std::vector<SweepRecord>& records);

struct ConvergenceRow {
    double epsilon;
    double c_mollified;
    double gap;  // c*(b) - c*(mollify(b, eps))
};

/// Mollification limit of an atomic coefficient across an epsilon grid.
std::vector<ConvergenceRow> convergence_table(const PeriodicCoefficient& b,
                                              const std::vector<double>& eps_grid,
                                              const SpeedConfig& cfg = {});

/// Truncated Fourier profile with |a_k| <= C/k^s, clipped at zero and
/// renormalized into Lambda(alpha). Deterministic in the seed.
PeriodicCoefficient fourier_random_coefficient(double alpha, double L, std::uint64_t seed,
                                               double smoothness = 2.0, int modes = 8,
                                               int n = PeriodicCoefficient::default_samples);

}  // namespace kpp
