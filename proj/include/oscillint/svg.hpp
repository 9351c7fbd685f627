#pragma once

#include <string>
#include <utility>
#include <vector>

namespace oscillint {

/// Log-log scatter with the fitted line and a reference-slope guide.
std::string svg_loglog_plot(const std::vector<std::pair<double, double>>& points,
                            double fit_slope, double fit_intercept, double reference_slope,
                            const std::string& title, const std::string& x_label,
                            const std::string& y_label);

/// Row-major heat map (rows x cols) with linear axes and a two-tone ramp.
std::string svg_heatmap(const std::vector<double>& values, int rows, int cols,
                        double x_lo, double x_hi, double y_lo, double y_hi,
                        const std::string& title, const std::string& x_label,
                        const std::string& y_label);

}  // namespace oscillint
