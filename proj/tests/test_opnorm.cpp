#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oscillint/opnorm.hpp"
#include "oscillint/transform.hpp"
#include "test_helpers.hpp"

using namespace oscillint;

namespace {
SymbolSpec spec2(double lambda) { return make_spec(2, lambda, testing::bumps()); }
}  // namespace

TEST_CASE("exponent fit: exact power law and degenerate ladders") {
  std::vector<std::pair<double, double>> ladder;
  for (const double lam : {4.0, 8.0, 16.0, 32.0})
    ladder.emplace_back(lam, 2.5 * std::pow(lam, 1.5));
  const ScalingReport fit = fit_exponent(ladder);
  CHECK(fit.slope == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::exp(fit.intercept) == doctest::Approx(2.5).epsilon(1e-10));

  std::vector<std::pair<double, double>> flat = {{4, 7}, {8, 7}, {16, 7}};
  CHECK(fit_exponent(flat).slope == doctest::Approx(0.0));

  CHECK_THROWS_AS(fit_exponent({{4, 1}, {8, 2}}), ValidationError);
  CHECK_THROWS_AS(fit_exponent({{4, 1}, {8, -2}, {16, 3}}), ValidationError);
}

TEST_CASE("ball transform at zero frequency is the volume") {
  CHECK(ball_indicator_ft(2, 0.01, 0.0) ==
        doctest::Approx(ball_volume(2, 0.01)).epsilon(1e-12));
  CHECK(ball_indicator_ft(3, 0.01, 0.0) ==
        doctest::Approx(ball_volume(3, 0.01)).epsilon(1e-12));
  // Tiny argument: quadratic falloff from the volume.
  CHECK(ball_indicator_ft(2, 0.01, 2.0) < ball_volume(2, 0.01));
  CHECK(ball_indicator_ft(2, 0.01, 2.0) > 0.99 * ball_volume(2, 0.01));
}

TEST_CASE("kernel l1 norm: homogeneity and sector restriction") {
  const GridField symbol = sample_symbol(spec2(8.0), 2.0, 256);
  const GridField kernel = kernel_fft(symbol, 16.0);
  const double full = kernel_l1_norm(kernel, 16.0);
  CHECK(full > 0.0);

  GridField scaled = symbol;
  for (auto& v : scaled.samples) v *= 3.0;
  const double tripled = kernel_l1_norm(kernel_fft(std::move(scaled)), 16.0);
  CHECK(tripled == doctest::Approx(3.0 * full).epsilon(1e-12));

  CHECK(sector_l1_norm(kernel, 8.0) <= full);
  CHECK(sector_l1_norm(kernel, 8.0) > 0.0);
  CHECK_THROWS_AS(kernel_l1_norm(kernel, 100.0), CoverageError);
}

TEST_CASE("ball convolution: mollification limit and validation") {
  const GridField symbol = sample_symbol(spec2(8.0), 2.0, 256);
  const GridField kernel = kernel_fft(symbol, 16.0);
  const std::int64_t i = kernel.nearest_index(0.0), j = kernel.nearest_index(10.0);
  const auto k_val = kernel.samples[kernel.index2(i, j)];
  double prev = 1e9;
  for (const double radius : {0.04, 0.02, 0.01}) {
    const GridField conv = ball_convolution(symbol, radius, 16.0);
    const auto c_val = conv.samples[conv.index2(i, j)] / ball_volume(2, radius);
    const double dev = std::abs(c_val - k_val);
    CHECK(dev < prev + 1e-12);
    prev = dev;
  }
  CHECK(prev < 2e-3 * std::abs(k_val));
  CHECK_THROWS_AS(ball_convolution(symbol, 0.2, 0.0), ValidationError);
  CHECK_THROWS_AS(ball_convolution(symbol, 0.0, 0.0), ValidationError);
}

TEST_CASE("convolution magnitude holds up on the concentration sector") {
  const double lam = 16.0;
  const GridField conv =
      ball_convolution(sample_symbol(spec2(lam), 2.0, 512), 0.01, 2 * lam);
  const double floor = sector_min_abs(conv, lam) * lam / ball_volume(2, 0.01);
  // |K * f| ~ vol * phi(lambda/r) chi / r on the sector, so the scaled floor
  // sits near lambda / r in [0.8, 1.25].
  CHECK(floor > 0.5);
  CHECK(floor < 2.0);
}

TEST_CASE("lower bounds respect the multiplier ceiling and interpolation") {
  const double lam = 16.0;
  const GridField symbol = sample_symbol(spec2(lam), 2.0, 512);
  double sup_m = 0.0;
  for (const auto& v : symbol.samples) sup_m = std::max(sup_m, std::abs(v));

  const GridField kernel = kernel_fft(symbol, 2 * lam);
  const double l1 = kernel_l1_norm(kernel, 2 * lam);
  const GridField conv = ball_convolution(symbol, 0.01, 2 * lam);

  const double lb2 = lp_lower_bound_from_convolution(conv, 2.0, 2, 0.01);
  CHECK(lb2 <= 1.02 * sup_m);

  for (const double p : {1.0, 4.0 / 3.0}) {
    const double lb = lp_lower_bound_from_convolution(conv, p, 2, 0.01);
    const double ceiling = std::pow(l1, 2.0 / p - 1.0) * std::pow(sup_m, 2.0 - 2.0 / p);
    CHECK(lb > 0.0);
    CHECK(lb <= ceiling);
  }
  CHECK_THROWS_AS(lp_lower_bound_from_convolution(conv, 0.5, 2, 0.01), ValidationError);
}
