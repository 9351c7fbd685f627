#include "oscillint/scaling.hpp"

#include <algorithm>
#include <cmath>

namespace oscillint {

nlohmann::json ScalingReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [lam, value] : ladder) rows.push_back({{"lambda", lam}, {"value", value}});
  return {{"ladder", rows},
          {"slope", slope},
          {"intercept", intercept},
          {"r_squared", r_squared}};
}

ScalingReport fit_exponent(std::vector<std::pair<double, double>> ladder) {
  if (ladder.size() < 3)
    throw ValidationError("fit_exponent: need at least three ladder points");
  std::sort(ladder.begin(), ladder.end());
  const auto n = static_cast<double>(ladder.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& [lam, value] : ladder) {
    if (!(lam > 0.0) || !(value > 0.0))
      throw ValidationError("fit_exponent: ladder entries must be positive");
    const double x = std::log(lam), y = std::log(value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double vxx = sxx - sx * sx / n;
  const double vxy = sxy - sx * sy / n;
  const double vyy = syy - sy * sy / n;
  if (vxx <= 0.0) throw ValidationError("fit_exponent: degenerate ladder");
  ScalingReport rep;
  rep.ladder = std::move(ladder);
  rep.slope = vxy / vxx;
  rep.intercept = (sy - rep.slope * sx) / n;
  rep.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  return rep;
}

}  // namespace oscillint
