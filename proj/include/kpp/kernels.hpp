#pragma once

#include <span>

namespace kpp {

enum class Boundary { dirichlet_zero, neumann };

/// Hot inner loops of the time stepper. Each has a serial reference and an
/// OpenMP version; the two must produce bitwise-identical output.
namespace kernels {

/// Exact logistic reaction step u' = r u (1-u) over dt, node by node, given
/// the precomputed growth factors g = exp(r dt).
void logistic_update_serial(std::span<double> u, std::span<const double> growth);
void logistic_update_omp(std::span<double> u, std::span<const double> growth);

/// rhs = (I + kappa * D2) u with the boundary rows pinned for the given
/// condition (Dirichlet keeps 0, Neumann mirrors the first interior node).
void diffusion_rhs_serial(std::span<const double> u, std::span<double> rhs, double kappa,
                          Boundary bc);
void diffusion_rhs_omp(std::span<const double> u, std::span<double> rhs, double kappa,
                       Boundary bc);

/// out_i = sum_j taps_j * u_{i+j-offset}, zero beyond the ends.
void convolve_serial(std::span<const double> u, std::span<const double> taps, int offset,
                     std::span<double> out);
void convolve_omp(std::span<const double> u, std::span<const double> taps, int offset,
                  std::span<double> out);

}  // namespace kernels
}  // namespace kpp
