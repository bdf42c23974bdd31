#ifndef EQSIM_SVG_HPP
#define EQSIM_SVG_HPP

#include "eqsim/linalg.hpp"

#include <limits>
#include <string>
#include <vector>

namespace eqsim {

// Self-contained SVG charts; the CSVs remain the authoritative outputs.

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgPointGroup {
    std::string label;
    CVec points;
};

// marker_x, when finite, draws a labeled vertical rule (e.g. a mode switch).
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<SvgSeries>& series,
                           bool log_y = false,
                           double marker_x = std::numeric_limits<double>::quiet_NaN(),
                           const std::string& marker_label = "");

std::string svg_scatter_chart(const std::string& title,
                              const std::vector<SvgPointGroup>& groups);

} // namespace eqsim

#endif // EQSIM_SVG_HPP
