#ifndef SCALEKIT_SVG_HPP_
#define SCALEKIT_SVG_HPP_

#include <string>
#include <vector>

namespace scalekit {

struct PlotSeries {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
    bool line = false; // scatter otherwise
    bool log_x = false;
    bool log_y = false;
};

// Self-contained SVG 1.1, fixed 800x600 canvas, decade gridlines on log axes.
std::string render_svg(const std::vector<PlotSeries>& series, const std::string& x_label,
                       const std::string& y_label);

} // namespace scalekit

#endif
