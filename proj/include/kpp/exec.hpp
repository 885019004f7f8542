#pragma once

#include <cstddef>

namespace kpp {

/// Execution policy for the data-parallel kernels. Every parallel path has a
/// serial twin; tests assert the two produce identical output.
enum class Exec { serial, openmp };

/// Apply f(i) for i in [0, n). Iterations must be independent.
template <typename F>
void parallel_for(std::ptrdiff_t n, Exec exec, F&& f) {
    if (exec == Exec::openmp) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
    }
}

}  // namespace kpp
