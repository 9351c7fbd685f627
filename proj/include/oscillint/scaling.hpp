#pragma once

#include <utility>
#include <vector>

#include <json.hpp>

#include "oscillint/errors.hpp"

namespace oscillint {

/// A lambda-ladder of measured values with the fitted log-log slope.
struct ScalingReport {
  std::vector<std::pair<double, double>> ladder;  // (lambda, value), sorted by lambda
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;

  nlohmann::json to_json() const;
};

/// Ordinary least squares of log(value) against log(lambda). Requires at
/// least three ladder points and strictly positive values.
ScalingReport fit_exponent(std::vector<std::pair<double, double>> ladder);

}  // namespace oscillint
