#include "eqsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace eqsim {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 70.0, kRight = 30.0, kTop = 40.0, kBottom = 55.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double m = 0.04 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

std::vector<double> ticks(const Range& r, int count) {
    std::vector<double> t;
    const double span = r.hi - r.lo;
    const double raw = span / count;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    const double first = std::ceil(r.lo / step) * step;
    for (double v = first; v <= r.hi + 1e-12 * span; v += step) t.push_back(v);
    return t;
}

void header(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
}

void axes(std::ostringstream& out, const Range& xr, const Range& yr, const std::string& x_label,
          const std::string& y_label, bool log_y) {
    const double px0 = kLeft, px1 = kWidth - kRight;
    const double py0 = kHeight - kBottom, py1 = kTop;
    auto sx = [&](double x) { return px0 + (x - xr.lo) / (xr.hi - xr.lo) * (px1 - px0); };
    auto sy = [&](double y) { return py0 + (y - yr.lo) / (yr.hi - yr.lo) * (py1 - py0); };

    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double t : ticks(xr, 8)) {
        const double x = sx(t);
        out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(py0) << "\" x2=\"" << fmt(x)
            << "\" y2=\"" << fmt(py1) << "\" stroke=\"#e0e0e0\"/>\n";
        out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(py0 + 16) << "\" text-anchor=\"middle\">"
            << fmt(t) << "</text>\n";
    }
    for (double t : ticks(yr, 7)) {
        const double y = sy(t);
        out << "<line x1=\"" << fmt(px0) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(px1)
            << "\" y2=\"" << fmt(y) << "\" stroke=\"#e0e0e0\"/>\n";
        const double label = log_y ? std::pow(10.0, t) : t;
        out << "<text x=\"" << fmt(px0 - 6) << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\">" << (log_y ? ("1e" + fmt(t)) : fmt(label))
            << "</text>\n";
    }
    out << "</g>\n";
    out << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << px1 - px0 << "\" height=\""
        << py0 - py1 << "\" fill=\"none\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << (py0 + py1) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << (py0 + py1) / 2 << ")\">" << y_label << "</text>\n";
}

void legend(std::ostringstream& out, const std::vector<std::string>& labels) {
    double y = kTop + 14;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<line x1=\"" << kLeft + 12 << "\" y1=\"" << y << "\" x2=\"" << kLeft + 40
            << "\" y2=\"" << y << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kLeft + 46 << "\" y=\"" << y + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << labels[i] << "</text>\n";
        y += 18;
    }
}

} // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<SvgSeries>& series,
                           bool log_y, double marker_x, const std::string& marker_label) {
    Range xr, yr;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xr.include(s.x[i]);
            const double y = log_y ? std::log10(std::max(s.y[i], 1e-12)) : s.y[i];
            yr.include(y);
        }
    xr.pad();
    yr.pad();

    std::ostringstream out;
    header(out, title);
    axes(out, xr, yr, x_label, y_label, log_y);

    const double px0 = kLeft, px1 = kWidth - kRight;
    const double py0 = kHeight - kBottom, py1 = kTop;
    auto sx = [&](double x) { return px0 + (x - xr.lo) / (xr.hi - xr.lo) * (px1 - px0); };
    auto sy = [&](double y) { return py0 + (y - yr.lo) / (yr.hi - yr.lo) * (py1 - py0); };

    if (std::isfinite(marker_x) && marker_x >= xr.lo && marker_x <= xr.hi) {
        const double mx = sx(marker_x);
        out << "<line x1=\"" << fmt(mx) << "\" y1=\"" << fmt(py0) << "\" x2=\"" << fmt(mx)
            << "\" y2=\"" << fmt(py1) << "\" stroke=\"#666\" stroke-dasharray=\"5,4\"/>\n";
        if (!marker_label.empty())
            out << "<text x=\"" << fmt(mx + 5) << "\" y=\"" << fmt(py1 + 12)
                << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#666\">"
                << marker_label << "</text>\n";
    }

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.4\" points=\"";
        for (std::size_t k = 0; k < series[i].x.size(); ++k) {
            const double y = log_y ? std::log10(std::max(series[i].y[k], 1e-12)) : series[i].y[k];
            out << fmt(sx(series[i].x[k])) << "," << fmt(sy(y)) << " ";
        }
        out << "\"/>\n";
        labels.push_back(series[i].label);
    }
    legend(out, labels);
    out << "</svg>\n";
    return out.str();
}

std::string svg_scatter_chart(const std::string& title, const std::vector<SvgPointGroup>& groups) {
    Range xr, yr;
    for (const auto& g : groups)
        for (const Cplx& p : g.points) {
            xr.include(p.real());
            yr.include(p.imag());
        }
    xr.pad();
    yr.pad();

    std::ostringstream out;
    header(out, title);
    axes(out, xr, yr, "in-phase", "quadrature", false);

    const double px0 = kLeft, px1 = kWidth - kRight;
    const double py0 = kHeight - kBottom, py1 = kTop;
    auto sx = [&](double x) { return px0 + (x - xr.lo) / (xr.hi - xr.lo) * (px1 - px0); };
    auto sy = [&](double y) { return py0 + (y - yr.lo) / (yr.hi - yr.lo) * (py1 - py0); };

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        for (const Cplx& p : groups[i].points)
            out << "<circle cx=\"" << fmt(sx(p.real())) << "\" cy=\"" << fmt(sy(p.imag()))
                << "\" r=\"1.6\" fill=\"" << color << "\" fill-opacity=\"0.6\"/>\n";
        labels.push_back(groups[i].label);
    }
    legend(out, labels);
    out << "</svg>\n";
    return out.str();
}

} // namespace eqsim
