#pragma once
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <gmeta/csv.hpp>

namespace gmeta::svg {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> err; // optional symmetric error bars
};

/// Standalone SVG 1.1 line chart. The plotted data is repeated in a
/// comment block so the figure can be re-read without parsing paths.
inline std::string line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                              const std::vector<Series>& series) {
    const double W = 640, H = 420, L = 70, R = 150, T = 40, B = 60;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            const double e = i < s.err.size() ? s.err[i] : 0.0;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i] - e);
            ymax = std::max(ymax, s.y[i] + e);
        }
    if (xmin > xmax) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
    if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H
      << "\">\n<!--\ndata: series,x,y,err\n";
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i)
            o << s.name << ',' << csv::format(s.x[i]) << ',' << csv::format(s.y[i]) << ','
              << csv::format(i < s.err.size() ? s.err[i] : 0.0) << '\n';
    o << "-->\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";
    o << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 4.0, yv = ymin + (ymax - ymin) * k / 4.0;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", xv);
        o << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 18
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << buf << "</text>\n";
        std::snprintf(buf, sizeof buf, "%.3g", yv);
        o << "<text x=\"" << L - 8 << "\" y=\"" << py(yv) + 4
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << buf << "</text>\n";
    }
    o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xlabel << "</text>\n";
    o << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" transform=\"rotate(-90 18 " << (T + H - B) / 2 << ")\">" << ylabel << "</text>\n";
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* c = colors[si % 6];
        std::vector<std::size_t> order(s.x.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return s.x[a] < s.x[b]; });
        o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\" points=\"";
        for (auto i : order)
            if (std::isfinite(s.y[i])) o << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        o << "\"/>\n";
        for (auto i : order) {
            if (!std::isfinite(s.y[i])) continue;
            o << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\"" << c << "\"/>\n";
            if (i < s.err.size() && s.err[i] > 0)
                o << "<line x1=\"" << px(s.x[i]) << "\" y1=\"" << py(s.y[i] - s.err[i]) << "\" x2=\""
                  << px(s.x[i]) << "\" y2=\"" << py(s.y[i] + s.err[i]) << "\" stroke=\"" << c << "\"/>\n";
        }
        o << "<text x=\"" << W - R + 10 << "\" y=\"" << T + 18 * (si + 1) << "\" fill=\"" << c
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

} // namespace gmeta::svg
