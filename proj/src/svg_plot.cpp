#include "bcva/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "bcva/errors.hpp"

namespace bcva {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string fmt(double x, const char* spec = "%.6g") {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, spec, x);
    return buffer;
}

std::string escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_svg_line_chart(std::ostream& out, const LineChart& chart, std::span<const double> xs,
                          std::span<const double> ys) {
    detail::require(!xs.empty() && xs.size() == ys.size(), "svg chart needs equal, non-empty series");
    auto [x_min, x_max] = std::minmax_element(xs.begin(), xs.end());
    auto [y_min_it, y_max_it] = std::minmax_element(ys.begin(), ys.end());
    double x0 = *x_min, x1 = *x_max;
    double y0 = std::min(0.0, *y_min_it), y1 = *y_max_it;
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;
    y1 += 0.05 * (y1 - y0);

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * plot_w; };
    auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * plot_h; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(chart.title) << "</text>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
        << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kTop + plot_h << "\" stroke=\"black\"/>\n";

    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double xv = x0 + (x1 - x0) * i / kTicks;
        const double yv = y0 + (y1 - y0) * i / kTicks;
        out << "<text x=\"" << fmt(px(xv), "%.2f") << "\" y=\"" << kTop + plot_h + 18
            << "\" text-anchor=\"middle\">" << fmt(xv, "%.3g") << "</text>\n";
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt(py(yv) + 4, "%.2f")
            << "\" text-anchor=\"end\">" << fmt(yv, "%.4f") << "</text>\n";
    }
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 16 << "\" text-anchor=\"middle\">"
        << escape(chart.x_label) << "</text>\n";
    out << "<text transform=\"translate(18," << kTop + plot_h / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(chart.y_label) << "</text>\n";

    out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out << (i ? " " : "") << fmt(px(xs[i]), "%.2f") << ',' << fmt(py(ys[i]), "%.2f");
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out << "<circle cx=\"" << fmt(px(xs[i]), "%.2f") << "\" cy=\"" << fmt(py(ys[i]), "%.2f")
            << "\" r=\"3\" fill=\"#1f4e9c\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace bcva
