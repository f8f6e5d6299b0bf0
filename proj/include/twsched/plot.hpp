#pragma once

#include <string>
#include <utility>
#include <vector>

namespace twsched {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points; // x, y
};

// Self-contained SVG line chart (no external assets): axes with ticks,
// light gridlines, one polyline per series, legend across the top.
[[nodiscard]] std::string line_chart_svg(const std::string& title, const std::string& x_label,
                                         const std::string& y_label,
                                         const std::vector<Series>& series);

} // namespace twsched
