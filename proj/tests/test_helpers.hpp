#pragma once

#include <memory>

#include "oscillint/bumps.hpp"
#include "oscillint/transform.hpp"

namespace oscillint::testing {

/// Shared standard bump set and transform tables. Building the profile
/// caches costs a couple of seconds, so every test case borrows these.
inline const std::shared_ptr<const BumpSet>& bumps() {
  static const std::shared_ptr<const BumpSet> set = BumpSet::standard();
  return set;
}

inline const TransformCache& cache() {
  static const TransformCache c(bumps());
  return c;
}

/// Central finite difference of the given order (1..4) at spacing h.
template <class F>
double central_difference(const F& f, double x, int order, double h) {
  switch (order) {
    case 1:
      return (f(x + h) - f(x - h)) / (2 * h);
    case 2:
      return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    case 3:
      return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
    case 4:
      return (f(x + 2 * h) - 4 * f(x + h) + 6 * f(x) - 4 * f(x - h) + f(x - 2 * h)) /
             (h * h * h * h);
    default:
      return 0.0;
  }
}

}  // namespace oscillint::testing
