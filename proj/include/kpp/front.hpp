#pragma once

#include <utility>

#include "kpp/pde.hpp"
#include "kpp/speed.hpp"

namespace kpp {

/// Least-squares line through the level-set trajectory of a developed front.
struct FrontFit {
    Direction direction = Direction::positive;
    double speed_estimate = 0.0;
    double intercept = 0.0;
    std::pair<double, double> fit_window{0.0, 0.0};
    double residual_rms = 0.0;
    /// sup over one period cell around the front of
    /// |u(x - L, t + T) - u(x, t)| with T = L / speed_estimate.
    double periodicity_defect = 0.0;
    /// half the spread between fits on the [0.4,0.7] and [0.7,1.0] windows
    double error_bar = 0.0;
};

/// Fit the trailing window_fraction of the trace. The window must be free of
/// boundary contamination, span at least five period crossings, and the
/// positions must be monotone up to a 2*dx jitter.
FrontFit fit_front(const SimulationTrace& trace, Direction direction,
                   double window_fraction = 0.5);

/// Log-slope of the leading edge where u runs through [1e-8, 1e-3]; the
/// window must span at least 3 L. Probes the snapshot nearest to t.
double decay_rate_probe(const SimulationTrace& trace, double t,
                        Direction direction = Direction::positive);

}  // namespace kpp
