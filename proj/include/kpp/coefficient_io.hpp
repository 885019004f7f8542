#pragma once

#include <string>

#include "kpp/coefficient.hpp"

namespace kpp {

/// Coefficient definition format:
///   { "period": L, "alpha": a, "kind": "constant" }
///   { "period": L, "alpha": a, "kind": "delta_comb" }
///   { "period": L, "alpha": a, "kind": "shigesada",
///     "fraction": f, "contrast": r | "inf" }
///   { "period": L, "kind": "samples", "values": [...] }
///   { "period": L, "kind": "mixture",
///     "continuous": { "type": "samples", "values": [...] }
///                 | { "type": "piecewise", "breakpoints": [...], "levels": [...] },
///     "atoms": [ { "position": x, "mass": m }, ... ] }
/// "alpha" is required for the parametric kinds and, when present elsewhere,
/// cross-checked against the cell mass.
PeriodicCoefficient coefficient_from_json(const std::string& text);
PeriodicCoefficient load_coefficient(const std::string& path);
std::string coefficient_to_json(const PeriodicCoefficient& b);

}  // namespace kpp
