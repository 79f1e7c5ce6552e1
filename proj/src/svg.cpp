#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "error.hpp"

namespace scalekit {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 140.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(ch);
        }
    }
    return out;
}

struct Axis {
    bool log = false;
    double lo = 0.0;
    double hi = 1.0;

    double project(double v, double pixel_lo, double pixel_hi) const {
        const double a = log ? std::log10(v) : v;
        const double l = log ? std::log10(lo) : lo;
        const double h = log ? std::log10(hi) : hi;
        const double t = (h == l) ? 0.5 : (a - l) / (h - l);
        return pixel_lo + t * (pixel_hi - pixel_lo);
    }
};

Axis make_axis(bool log, double mn, double mx) {
    Axis ax;
    ax.log = log;
    if (log) {
        // pad to the surrounding decades
        ax.lo = std::pow(10.0, std::floor(std::log10(mn)));
        ax.hi = std::pow(10.0, std::ceil(std::log10(mx)));
        if (ax.lo == ax.hi) ax.hi = ax.lo * 10.0;
    } else {
        const double pad = (mx == mn) ? (mn == 0.0 ? 1.0 : std::fabs(mn) * 0.1)
                                      : (mx - mn) * 0.05;
        ax.lo = mn - pad;
        ax.hi = mx + pad;
    }
    return ax;
}

std::string sci_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0e", v);
    return buf;
}

} // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const std::string& x_label,
                       const std::string& y_label) {
    if (series.empty()) fail(ErrorCode::empty_input, "no series to plot");
    bool log_x = false, log_y = false;
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    bool first = true;
    for (const auto& s : series) {
        if (s.xs.empty() || s.xs.size() != s.ys.size())
            fail(ErrorCode::invalid_argument, "series needs matching non-empty x/y lists");
        log_x = log_x || s.log_x;
        log_y = log_y || s.log_y;
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i]))
                fail(ErrorCode::nonfinite_coordinate, "non-finite plot coordinate");
            if (first) {
                min_x = max_x = s.xs[i];
                min_y = max_y = s.ys[i];
                first = false;
            } else {
                min_x = std::min(min_x, s.xs[i]);
                max_x = std::max(max_x, s.xs[i]);
                min_y = std::min(min_y, s.ys[i]);
                max_y = std::max(max_y, s.ys[i]);
            }
        }
    }
    if (log_x && min_x <= 0.0)
        fail(ErrorCode::invalid_argument, "log x axis needs positive coordinates");
    if (log_y && min_y <= 0.0)
        fail(ErrorCode::invalid_argument, "log y axis needs positive coordinates");

    const Axis ax = make_axis(log_x, min_x, max_x);
    const Axis ay = make_axis(log_y, min_y, max_y);
    const double px_l = kMarginLeft, px_r = kWidth - kMarginRight;
    const double py_t = kMarginTop, py_b = kHeight - kMarginBottom;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
           "height=\"600\" viewBox=\"0 0 800 600\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";

    // frame
    out += "<rect x=\"" + num(px_l) + "\" y=\"" + num(py_t) + "\" width=\"" +
           num(px_r - px_l) + "\" height=\"" + num(py_b - py_t) +
           "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

    // decade gridlines and tick labels
    if (ax.log) {
        for (int k = static_cast<int>(std::ceil(std::log10(ax.lo)));
             k <= static_cast<int>(std::floor(std::log10(ax.hi))); ++k) {
            const double v = std::pow(10.0, k);
            const double x = ax.project(v, px_l, px_r);
            out += "<line x1=\"" + num(x) + "\" y1=\"" + num(py_t) + "\" x2=\"" + num(x) +
                   "\" y2=\"" + num(py_b) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
            out += "<text x=\"" + num(x) + "\" y=\"" + num(py_b + 18.0) +
                   "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
                   sci_label(v) + "</text>\n";
        }
    }
    if (ay.log) {
        for (int k = static_cast<int>(std::ceil(std::log10(ay.lo)));
             k <= static_cast<int>(std::floor(std::log10(ay.hi))); ++k) {
            const double v = std::pow(10.0, k);
            const double y = ay.project(v, py_b, py_t);
            out += "<line x1=\"" + num(px_l) + "\" y1=\"" + num(y) + "\" x2=\"" + num(px_r) +
                   "\" y2=\"" + num(y) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
            out += "<text x=\"" + num(px_l - 6.0) + "\" y=\"" + num(y + 4.0) +
                   "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
                   sci_label(v) + "</text>\n";
        }
    } else {
        for (int k = 0; k <= 4; ++k) {
            const double v = ay.lo + (ay.hi - ay.lo) * k / 4.0;
            const double y = ay.project(v, py_b, py_t);
            out += "<line x1=\"" + num(px_l) + "\" y1=\"" + num(y) + "\" x2=\"" + num(px_r) +
                   "\" y2=\"" + num(y) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4g", v);
            out += "<text x=\"" + num(px_l - 6.0) + "\" y=\"" + num(y + 4.0) +
                   "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
                   std::string(buf) + "</text>\n";
        }
    }
    if (!ax.log) {
        for (int k = 0; k <= 4; ++k) {
            const double v = ax.lo + (ax.hi - ax.lo) * k / 4.0;
            const double x = ax.project(v, px_l, px_r);
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4g", v);
            out += "<text x=\"" + num(x) + "\" y=\"" + num(py_b + 18.0) +
                   "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
                   std::string(buf) + "</text>\n";
        }
    }

    // axis labels
    out += "<text x=\"" + num((px_l + px_r) / 2.0) + "\" y=\"" + num(kHeight - 14.0) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" +
           escape_xml(x_label) + "</text>\n";
    out += "<text x=\"18\" y=\"" + num((py_t + py_b) / 2.0) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 " +
           num((py_t + py_b) / 2.0) + ")\">" + escape_xml(y_label) + "</text>\n";

    // series
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        if (s.line) {
            std::string pts;
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                if (i) pts += " ";
                pts += num(ax.project(s.xs[i], px_l, px_r)) + "," +
                       num(ay.project(s.ys[i], py_b, py_t));
            }
            out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                   "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
        } else {
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                out += "<circle cx=\"" + num(ax.project(s.xs[i], px_l, px_r)) + "\" cy=\"" +
                       num(ay.project(s.ys[i], py_b, py_t)) + "\" r=\"4\" fill=\"" + color +
                       "\"/>\n";
            }
        }
        // legend entry
        const double ly = py_t + 16.0 + 18.0 * static_cast<double>(si);
        out += "<rect x=\"" + num(px_r + 10.0) + "\" y=\"" + num(ly - 9.0) +
               "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n";
        out += "<text x=\"" + num(px_r + 28.0) + "\" y=\"" + num(ly + 1.0) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + escape_xml(s.name) +
               "</text>\n";
    }

    out += "</svg>\n";
    return out;
}

} // namespace scalekit
