#include "kpp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kpp/errors.hpp"

namespace kpp {

namespace {

void color_of(double v, int* r, int* g, int* b) {
    // dark blue -> yellow ramp on [0, 1]
    v = std::clamp(v, 0.0, 1.0);
    *r = static_cast<int>(255.0 * v);
    *g = static_cast<int>(32.0 + 180.0 * v);
    *b = static_cast<int>(96.0 * (1.0 - v) + 40.0);
}

}  // namespace

std::string heatmap_svg(const SimulationTrace& trace, int max_cols) {
    const int stride = std::max(1, trace.n / max_cols);
    const int cols = trace.n / stride;
    const int rows = static_cast<int>(trace.snapshots.size());
    const int cell_w = 1, cell_h = 4;
    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << cols * cell_w << "' height='"
       << rows * cell_h << "'>\n";
    char buf[128];
    for (int row = 0; row < rows; ++row) {
        const auto& u = trace.snapshots[static_cast<std::size_t>(row)];
        for (int col = 0; col < cols; ++col) {
            int r, g, b;
            color_of(u[static_cast<std::size_t>(col * stride)], &r, &g, &b);
            std::snprintf(buf, sizeof(buf),
                          "<rect x='%d' y='%d' width='%d' height='%d' fill='rgb(%d,%d,%d)'/>\n",
                          col * cell_w, row * cell_h, cell_w, cell_h, r, g, b);
            os << buf;
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string scatter_svg(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::string& x_label, const std::string& y_label) {
    if (xs.empty() || xs.size() != ys.size())
        throw InvalidParameter("scatter_svg: mismatched or empty data");
    const double xmin = *std::min_element(xs.begin(), xs.end());
    const double xmax = *std::max_element(xs.begin(), xs.end());
    const double ymin = *std::min_element(ys.begin(), ys.end());
    const double ymax = *std::max_element(ys.begin(), ys.end());
    const double xspan = (xmax > xmin) ? xmax - xmin : 1.0;
    const double yspan = (ymax > ymin) ? ymax - ymin : 1.0;
    const int w = 640, h = 420, pad = 48;
    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n"
       << "<rect width='" << w << "' height='" << h << "' fill='white'/>\n"
       << "<line x1='" << pad << "' y1='" << h - pad << "' x2='" << w - pad << "' y2='"
       << h - pad << "' stroke='black'/>\n"
       << "<line x1='" << pad << "' y1='" << pad << "' x2='" << pad << "' y2='" << h - pad
       << "' stroke='black'/>\n"
       << "<text x='" << w / 2 << "' y='" << h - 12 << "' font-size='12'>" << x_label
       << "</text>\n"
       << "<text x='12' y='" << h / 2 << "' font-size='12' transform='rotate(-90 12 "
       << h / 2 << ")'>" << y_label << "</text>\n";
    char buf[160];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double px = pad + (xs[i] - xmin) / xspan * (w - 2 * pad);
        const double py = h - pad - (ys[i] - ymin) / yspan * (h - 2 * pad);
        std::snprintf(buf, sizeof(buf), "<circle cx='%.1f' cy='%.1f' r='3' fill='steelblue'/>\n",
                      px, py);
        os << buf;
    }
    os << "</svg>\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw InvalidParameter("cannot write file: " + path);
    out << content;
}

}  // namespace kpp
