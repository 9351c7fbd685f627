#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oscillint/bumps.hpp"
#include "oscillint/rng.hpp"
#include "test_helpers.hpp"

using namespace oscillint;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("radial profile vanishes outside its support, exactly") {
  const SmoothBump& phi = testing::bumps()->phi;
  CHECK(phi(0.4) == 0.0);
  CHECK(phi(0.5) == 0.0);
  CHECK(phi(1.5) == 0.0);
  CHECK(phi(7.0) == 0.0);
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double t = rng.next_double() < 0.5 ? rng.uniform(-5.0, 0.5) : rng.uniform(1.5, 9.0);
    CHECK(phi(t) == 0.0);
  }
}

TEST_CASE("radial profile is positive on the plateau and below its height") {
  const SmoothBump& phi = testing::bumps()->phi;
  CHECK(phi(1.0) > 0.0);
  CHECK(phi(1.0) == phi.height());
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.uniform(phi.plateau_lo(), phi.plateau_hi());
    CHECK(phi(t) >= phi.plateau_floor());
    CHECK(phi(t) <= phi.height());
  }
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.uniform(phi.support_lo() - 1.0, phi.support_hi() + 1.0);
    CHECK(phi(t) <= phi.height());
  }
}

TEST_CASE("angular window never exceeds one") {
  const SmoothBump& chi = testing::bumps()->chi;
  Rng rng(9);
  for (int i = 0; i < 2000; ++i) CHECK(chi(rng.uniform(-2.0, 2.0)) <= 1.0);
  CHECK(chi(0.0) == 1.0);
  CHECK(chi(-1.0 / 3.0) == 1.0);
}

TEST_CASE("finite differences of the bumps stay bounded and h-stable") {
  // Smoothness proxy. The order-k bound folds in the round-off term
  // 2^k eps / h^k, which dominates at h = 1e-4 for k >= 3.
  const double bounds[5] = {0.0, 40.0, 2.0e3, 4.0e5, 5.0e7};
  for (const SmoothBump* b : {&testing::bumps()->phi, &testing::bumps()->chi}) {
    for (int order = 1; order <= 4; ++order) {
      for (const double h : {1e-3, 1e-4}) {
        double sup = 0.0;
        for (int i = 0; i <= 400; ++i) {
          const double t =
              b->support_lo() - 0.05 + (b->support_hi() - b->support_lo() + 0.1) * i / 400.0;
          sup = std::max(sup, std::abs(testing::central_difference(*b, t, order, h)));
        }
        CAPTURE(order);
        CAPTURE(h);
        CHECK(sup < bounds[order] + 32.0 * 1e-16 / std::pow(h, order));
      }
    }
  }
}

TEST_CASE("periodic phase is linear on [-1, 1], exactly") {
  const PeriodicPhase& phase = testing::bumps()->phase;
  CHECK(phase(0.5) == kTwoPi * 0.5);
  CHECK(phase(0.5) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(phase(0.0) == 0.0);
  Rng rng(10);
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.uniform(-1.0, 1.0);
    CHECK(phase(t) == kTwoPi * t);
  }
}

TEST_CASE("periodic phase repeats with period 2 pi, exactly on a dyadic grid") {
  const PeriodicPhase& phase = testing::bumps()->phase;
  // Dyadic abscissae keep theta + 2 pi exactly representable, so the wrap
  // inside the evaluation is exact arithmetic and the values match bitwise.
  for (int i = -512; i <= 512; ++i) {
    const double theta = static_cast<double>(i) / 256.0;
    CHECK(phase(theta + kTwoPi) == phase(theta));
    CHECK(phase(theta - kTwoPi) == phase(theta));
  }
  CHECK(phase(0.5 + kTwoPi) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("periodic phase is odd, zero at the seam, and derivative-bounded") {
  const PeriodicPhase& phase = testing::bumps()->phase;
  CHECK(phase(std::numbers::pi) == doctest::Approx(0.0).epsilon(1e-12));
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.uniform(-std::numbers::pi, std::numbers::pi);
    CHECK(phase(-t) == doctest::Approx(-phase(t)).epsilon(1e-12));
  }
  double sup1 = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double t = -std::numbers::pi + kTwoPi * i / 4000.0;
    sup1 = std::max(sup1, std::abs(testing::central_difference(phase, t, 1, 1e-5)));
  }
  CHECK(sup1 <= phase.slope_bound() * 1.01);
  for (int order = 1; order <= 4; ++order) {
    double sup = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double t = -std::numbers::pi + kTwoPi * i / 2000.0;
      sup = std::max(sup, std::abs(testing::central_difference(phase, t, order, 1e-3)));
    }
    CAPTURE(order);
    CHECK(sup < 1e6);
  }
}

TEST_CASE("spherical phase evaluates 2 - 2 zeta_1") {
  const SphericalPhase phase(3);
  CHECK(phase(std::array{1.0, 0.0, 0.0}) == 0.0);
  CHECK(phase(std::array{-1.0, 0.0, 0.0}) == 4.0);
  CHECK(phase(std::array{0.0, 1.0, 0.0}) == 2.0);
  CHECK_THROWS_AS(phase(std::array{0.5, 0.5, 0.5}), ValidationError);
}

TEST_CASE("sphere cutoff lives on its cap") {
  const SphereCutoff& cap = testing::bumps()->cap3;
  CHECK(cap(std::array{1.0, 0.0, 0.0}) > 0.0);
  CHECK(cap(std::array{0.0, 1.0, 0.0}) == 0.0);
  const double eps = cap.angular_radius();
  const std::array boundary{std::cos(eps), std::sin(eps), 0.0};
  CHECK(cap(boundary) == 0.0);
  const std::array inside{std::cos(0.5 * eps), std::sin(0.5 * eps), 0.0};
  CHECK(cap(inside) > 0.0);
  CHECK_THROWS_AS(cap(std::array{2.0, 0.0, 0.0}), ValidationError);
}

TEST_CASE("bump parameters round-trip through json") {
  const auto j = testing::bumps()->to_json();
  const auto restored = BumpSet::from_json(j);
  CHECK(restored->phi.support_lo() == testing::bumps()->phi.support_lo());
  CHECK(restored->chi.plateau_hi() == testing::bumps()->chi.plateau_hi());
  CHECK(restored->cap3.angular_radius() == testing::bumps()->cap3.angular_radius());
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const double t = rng.uniform(0.0, 2.0);
    CHECK(restored->phi(t) == testing::bumps()->phi(t));
  }
}
