#pragma once

#include <string>
#include <vector>

#include "kpp/pde.hpp"

namespace kpp {

/// Self-contained space-time heatmap of a trace (x horizontal, t downward).
std::string heatmap_svg(const SimulationTrace& trace, int max_cols = 1024);

/// Scatter of labelled (x, y) points, e.g. (descriptor index, c*).
std::string scatter_svg(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::string& x_label, const std::string& y_label);

void write_file(const std::string& path, const std::string& content);

}  // namespace kpp
