#pragma once

#include <stdexcept>
#include <string>

namespace kpp {

/// Bad constructor or operation arguments (nonpositive alpha, infeasible
/// levels, malformed profiles, ...).
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Mollifier width exceeds the smallest atom gap, so bumps would merge.
struct KernelOverlap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative solver ran out of iterations; carries the last residual.
struct IterationLimit : std::runtime_error {
    IterationLimit(const std::string& what, double last_residual)
        : std::runtime_error(what), residual(last_residual) {}
    double residual;
};

/// The computed eigenvector changed sign: the shift strategy locked onto a
/// non-principal mode.
struct SpuriousMode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dispersion bracket contained no sign change even after widening.
struct BracketFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Candidate eigenfunction failed the positivity certificate.
struct PrincipalBranchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Minimizer landed on a scan-bracket edge.
struct BracketEscape : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The operation requires a coefficient class it was not given
/// (e.g. atoms where a classical function is needed).
struct UnsupportedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Time stepper produced a state outside its invariants (undershoot, NaN).
struct SchemeViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Time step violates the stability constraint of the chosen scheme.
struct StabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Front trajectory too jittery to fit a speed.
struct NoisyFront : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Leading-edge window too small for a decay-rate fit.
struct InsufficientEdge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace kpp
