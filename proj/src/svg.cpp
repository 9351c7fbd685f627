#include "oscillint/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace oscillint {

namespace {

constexpr int kW = 640, kH = 480;
constexpr int kMargin = 64;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Mapper {
  double lo_x, hi_x, lo_y, hi_y;
  double px(double x) const {
    return kMargin + (x - lo_x) / (hi_x - lo_x) * (kW - 2 * kMargin);
  }
  double py(double y) const {
    return kH - kMargin - (y - lo_y) / (hi_y - lo_y) * (kH - 2 * kMargin);
  }
};

void axes(std::string& svg, const Mapper& m, const std::string& title,
          const std::string& x_label, const std::string& y_label) {
  svg += "<rect x='" + num(kMargin) + "' y='" + num(kMargin) + "' width='" +
         num(kW - 2 * kMargin) + "' height='" + num(kH - 2 * kMargin) +
         "' fill='none' stroke='black'/>\n";
  svg += "<text x='" + num(kW / 2) + "' y='24' text-anchor='middle' font-size='16'>" +
         title + "</text>\n";
  svg += "<text x='" + num(kW / 2) + "' y='" + num(kH - 16) +
         "' text-anchor='middle' font-size='13'>" + x_label + "</text>\n";
  svg += "<text x='18' y='" + num(kH / 2) +
         "' text-anchor='middle' font-size='13' transform='rotate(-90 18 " + num(kH / 2) +
         ")'>" + y_label + "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = m.lo_x + (m.hi_x - m.lo_x) * i / 4.0;
    const double fy = m.lo_y + (m.hi_y - m.lo_y) * i / 4.0;
    svg += "<text x='" + num(m.px(fx)) + "' y='" + num(kH - kMargin + 18) +
           "' text-anchor='middle' font-size='11'>" + num(fx) + "</text>\n";
    svg += "<text x='" + num(kMargin - 8) + "' y='" + num(m.py(fy) + 4) +
           "' text-anchor='end' font-size='11'>" + num(fy) + "</text>\n";
  }
}

std::string header() {
  return "<svg xmlns='http://www.w3.org/2000/svg' width='" + std::to_string(kW) +
         "' height='" + std::to_string(kH) + "'>\n<rect width='100%' height='100%' "
         "fill='white'/>\n";
}

}  // namespace

std::string svg_loglog_plot(const std::vector<std::pair<double, double>>& points,
                            double fit_slope, double fit_intercept, double reference_slope,
                            const std::string& title, const std::string& x_label,
                            const std::string& y_label) {
  Mapper m{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& [x, y] : points) {
    m.lo_x = std::min(m.lo_x, std::log(x));
    m.hi_x = std::max(m.hi_x, std::log(x));
    m.lo_y = std::min(m.lo_y, std::log(y));
    m.hi_y = std::max(m.hi_y, std::log(y));
  }
  const double pad_x = 0.08 * (m.hi_x - m.lo_x + 1e-12);
  const double pad_y = 0.15 * (m.hi_y - m.lo_y + 1e-12);
  m.lo_x -= pad_x;
  m.hi_x += pad_x;
  m.lo_y -= pad_y;
  m.hi_y += pad_y;

  std::string svg = header();
  axes(svg, m, title, x_label, y_label);

  const auto line = [&](double slope, double intercept, const char* color,
                        const char* dash) {
    const double y0 = intercept + slope * m.lo_x;
    const double y1 = intercept + slope * m.hi_x;
    svg += "<line x1='" + num(m.px(m.lo_x)) + "' y1='" + num(m.py(y0)) + "' x2='" +
           num(m.px(m.hi_x)) + "' y2='" + num(m.py(y1)) + "' stroke='" + color +
           "' stroke-dasharray='" + dash + "'/>\n";
  };
  line(fit_slope, fit_intercept, "#1f6fb2", "none");
  if (!points.empty()) {
    // Anchor the reference-slope guide at the first ladder point.
    const double x0 = std::log(points.front().first);
    const double y0 = std::log(points.front().second);
    line(reference_slope, y0 - reference_slope * x0, "#b23a1f", "6,4");
  }
  for (const auto& [x, y] : points)
    svg += "<circle cx='" + num(m.px(std::log(x))) + "' cy='" + num(m.py(std::log(y))) +
           "' r='4' fill='black'/>\n";
  svg += "<text x='" + num(kW - kMargin) + "' y='40' text-anchor='end' font-size='12'>fit " +
         num(fit_slope) + ", reference " + num(reference_slope) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

std::string svg_heatmap(const std::vector<double>& values, int rows, int cols,
                        double x_lo, double x_hi, double y_lo, double y_hi,
                        const std::string& title, const std::string& x_label,
                        const std::string& y_label) {
  Mapper m{x_lo, x_hi, y_lo, y_hi};
  double vmax = 0.0;
  for (const double v : values) vmax = std::max(vmax, v);
  if (vmax == 0.0) vmax = 1.0;

  std::string svg = header();
  const double cw = (kW - 2.0 * kMargin) / cols;
  const double ch = (kH - 2.0 * kMargin) / rows;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double v = values[static_cast<std::size_t>(i) * cols + j] / vmax;
      const int red = static_cast<int>(255 * v);
      const int blue = static_cast<int>(255 * (1.0 - v));
      svg += "<rect x='" + num(kMargin + j * cw) + "' y='" +
             num(kH - kMargin - (i + 1) * ch) + "' width='" + num(cw + 0.5) +
             "' height='" + num(ch + 0.5) + "' fill='rgb(" + std::to_string(red) + ",64," +
             std::to_string(blue) + ")'/>\n";
    }
  axes(svg, m, title, x_label, y_label);
  svg += "<text x='" + num(kW - kMargin) + "' y='40' text-anchor='end' font-size='12'>max " +
         num(vmax) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace oscillint
