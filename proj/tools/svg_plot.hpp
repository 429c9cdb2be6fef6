#pragma once

// Tiny SVG polyline plotter for the --svg flag.  CSV stays the canonical
// output; these files are a quick visual aid only.

#include <algorithm>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "coex/errors.hpp"

namespace coex::plot {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

inline void write_svg_curves(const std::string& path, const std::string& title,
                             const std::vector<Series>& series) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    const double W = 720, H = 480, L = 70, R = 20, T = 40, B = 50;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!(xmax > xmin)) xmax = xmin + 1;
    if (!(ymax > ymin)) ymax = ymin + 1;
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
        << "<text x='" << W / 2 << "' y='20' text-anchor='middle' font-size='15'>" << title
        << "</text>\n"
        << "<line x1='" << L << "' y1='" << H - B << "' x2='" << W - R << "' y2='" << H - B
        << "' stroke='black'/>\n"
        << "<line x1='" << L << "' y1='" << T << "' x2='" << L << "' y2='" << H - B
        << "' stroke='black'/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double xv = xmin + k * (xmax - xmin) / 5, yv = ymin + k * (ymax - ymin) / 5;
        out << "<text x='" << px(xv) << "' y='" << H - B + 18
            << "' text-anchor='middle' font-size='11'>" << xv << "</text>\n"
            << "<text x='" << L - 6 << "' y='" << py(yv) + 4
            << "' text-anchor='end' font-size='11'>" << yv << "</text>\n";
    }
    int ci = 0;
    for (const auto& s : series) {
        const char* color = colors[ci % 8];
        out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << px(s.x[i]) << "," << py(s.y[i]) << " ";
        out << "'/>\n<text x='" << W - R - 150 << "' y='" << T + 16 * ci
            << "' font-size='12' fill='" << color << "'>" << s.label << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

}  // namespace coex::plot
