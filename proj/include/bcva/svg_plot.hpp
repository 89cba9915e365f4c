#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace bcva {

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// Writes a standalone SVG line chart of ys against xs (equal, non-empty spans).
void write_svg_line_chart(std::ostream& out, const LineChart& chart, std::span<const double> xs,
                          std::span<const double> ys);

}  // namespace bcva
