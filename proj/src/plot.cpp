#include "twsched/plot.hpp"

#include "twsched/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace twsched {

namespace {

constexpr double width = 720, height = 480;
constexpr double left = 70, right = 698, top = 56, bottom = 430;

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                               "#9467bd", "#8c564b", "#17becf"};

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

std::string num(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string coord(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

} // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<Series>& series) {
    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    bool any = false;
    for (const Series& s : series)
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y))
                throw ConfigError("chart points must be finite");
            if (!any) {
                x_min = x_max = x;
                y_min = y_max = y;
                any = true;
            }
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    if (x_min == x_max) {
        x_min -= 1;
        x_max += 1;
    }
    if (y_min == y_max) {
        y_min -= 1;
        y_max += 1;
    }
    const double y_pad = (y_max - y_min) * 0.05;
    y_min -= y_pad;
    y_max += y_pad;

    const auto sx = [&](double x) {
        return left + (x - x_min) / (x_max - x_min) * (right - left);
    };
    const auto sy = [&](double y) {
        return bottom - (y - y_min) / (y_max - y_min) * (bottom - top);
    };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                      "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
                      num(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + coord(width / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           escape(title) + "</text>\n";

    // Gridlines and tick labels, five divisions per axis.
    for (int i = 0; i <= 5; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 5;
        const double fy = y_min + (y_max - y_min) * i / 5;
        const double px = sx(fx), py = sy(fy);
        svg += "<line x1=\"" + coord(px) + "\" y1=\"" + coord(top) + "\" x2=\"" + coord(px) +
               "\" y2=\"" + coord(bottom) + "\" stroke=\"#dddddd\"/>\n";
        svg += "<line x1=\"" + coord(left) + "\" y1=\"" + coord(py) + "\" x2=\"" + coord(right) +
               "\" y2=\"" + coord(py) + "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + coord(px) + "\" y=\"" + coord(bottom + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               num(fx) + "</text>\n";
        svg += "<text x=\"" + coord(left - 8) + "\" y=\"" + coord(py + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(fy) +
               "</text>\n";
    }

    svg += "<rect x=\"" + coord(left) + "\" y=\"" + coord(top) + "\" width=\"" +
           coord(right - left) + "\" height=\"" + coord(bottom - top) +
           "\" fill=\"none\" stroke=\"#333333\"/>\n";
    svg += "<text x=\"" + coord((left + right) / 2) + "\" y=\"" + coord(height - 10) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape(x_label) + "</text>\n";
    svg += "<text x=\"16\" y=\"" + coord((top + bottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " +
           coord((top + bottom) / 2) + ")\">" + escape(y_label) + "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = palette[i % (sizeof palette / sizeof palette[0])];
        std::string points;
        for (const auto& [x, y] : series[i].points) {
            if (!points.empty()) points += " ";
            points += coord(sx(x)) + "," + coord(sy(y));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";

        const double lx = left + 8 + static_cast<double>(i) * 150;
        svg += "<line x1=\"" + coord(lx) + "\" y1=\"40\" x2=\"" + coord(lx + 22) +
               "\" y2=\"40\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + coord(lx + 28) +
               "\" y=\"44\" font-family=\"sans-serif\" font-size=\"12\">" +
               escape(series[i].label) + "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace twsched
