#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oscillint/quadrature.hpp"

using namespace oscillint;

TEST_CASE("adaptive rule reproduces closed-form integrals") {
  QuadratureOptions opt;
  opt.abs_tol = 1e-12;
  const double s =
      integrate_adaptive_real([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, opt);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-12));

  const auto osc = integrate_adaptive(
      [](double x) { return std::polar(1.0, 40.0 * x); }, 0.0, 1.0, opt);
  const std::complex<double> exact =
      (std::polar(1.0, 40.0) - 1.0) / std::complex<double>(0.0, 40.0);
  CHECK(std::abs(osc - exact) < 1e-11);
}

TEST_CASE("panel cap splits long oscillatory ranges") {
  QuadratureOptions opt;
  opt.abs_tol = 1e-10;
  opt.max_panel = 0.25;
  const auto v = integrate_adaptive(
      [](double x) { return std::polar(std::exp(-x * x / 200.0), 6.0 * x); }, -40.0, 40.0,
      opt);
  // Gaussian times e^{i 6 x}: transform of the envelope at frequency 6.
  const double sigma2 = 100.0;
  const std::complex<double> exact =
      std::sqrt(2.0 * std::numbers::pi * sigma2) * std::exp(-0.5 * sigma2 * 36.0);
  CHECK(std::abs(v - exact) < 1e-9);
}

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  for (const int n : {4, 16, 64}) {
    const GaussLegendre& rule = gauss_legendre(n);
    double acc = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      mass += rule.weights[i];
      acc += rule.weights[i] * std::pow(rule.nodes[i], 6);
    }
    CHECK(mass == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(acc == doctest::Approx(2.0 / 7.0).epsilon(1e-13));  // integral of x^6
  }
}
