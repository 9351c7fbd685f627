#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oscillint/parallel.hpp"
#include "oscillint/quadrature.hpp"
#include "oscillint/transform.hpp"
#include "oscillint/rng.hpp"
#include "test_helpers.hpp"

using namespace oscillint;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

SymbolSpec spec2(double lambda) { return make_spec(2, lambda, testing::bumps()); }

double grid_l2_sq(const GridField& f) {
  return f.cell_volume() *
         pairwise_sum(static_cast<std::int64_t>(f.samples.size()), [&](std::int64_t i) {
           return std::norm(f.samples[static_cast<std::size_t>(i)]);
         });
}
}  // namespace

TEST_CASE("profile transform: zero frequency is the profile mass") {
  const ProfileFourier& pf = testing::cache().radial_profile_ft(2);
  const double mass = integrate_adaptive_real([&](double r) { return testing::bumps()->phi(r); },
                                              0.5, 1.5);
  const auto v = pf(0.0);
  CHECK(v.real() == doctest::Approx(mass).epsilon(1e-10));
  CHECK(std::abs(v.imag()) < 1e-12);
  CHECK(v.real() > 0.0);
}

TEST_CASE("profile transform: conjugate symmetry is exact") {
  const ProfileFourier& pf = testing::cache().radial_profile_ft(2);
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const double s = rng.uniform(0.0, 900.0);
    CHECK(pf(-s) == std::conj(pf(s)));
  }
}

TEST_CASE("profile transform cache matches adaptive quadrature") {
  const ProfileFourier& pf = testing::cache().radial_profile_ft(2);
  Rng rng(32);
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double s = rng.uniform(-40.0, 40.0);
    worst = std::max(worst, std::abs(pf(s) - pf.direct(s)));
  }
  // A few nodes deep in the tail, where cancellation is strongest.
  for (const double s : {120.0, 333.3, 512.7, 999.0})
    worst = std::max(worst, std::abs(pf(s) - pf.direct(s)));
  CHECK(worst < 1e-9);
}

TEST_CASE("profile transform decays quadratically (and much faster)") {
  const ProfileFourier& pf = testing::cache().radial_profile_ft(2);
  Rng rng(33);
  double sup = 0.0;
  for (int i = 0; i < 60; ++i) {
    const double s = std::exp(rng.uniform(std::log(10.0), std::log(1000.0)));
    sup = std::max(sup, std::abs(pf(s)) * s * s);
  }
  CHECK(sup < 1.0);
  // The envelope really is monotone and reaches the cutoff threshold.
  CHECK(pf.envelope(10.0) >= pf.envelope(100.0));
  CHECK(pf.envelope(pf.tail_cutoff(1e-9)) <= 1e-9);
}

TEST_CASE("kernel fft reproduces the gaussian transform") {
  // e^{-pi |xi|^2} is its own transform; an 8-sigma box makes truncation
  // invisible at double precision.
  GridField g = make_grid(2, 256, 8.0, Side::fourier);
  for (std::int64_t i = 0; i < g.n; ++i)
    for (std::int64_t j = 0; j < g.n; ++j) {
      const double x = g.coord(i), y = g.coord(j);
      g.samples[g.index2(i, j)] = std::exp(-std::numbers::pi * (x * x + y * y));
    }
  const GridField k = kernel_fft(std::move(g));
  CHECK(k.side == Side::space);
  CHECK(k.half_side == doctest::Approx(8.0));
  for (const double x : {0.0, 0.25, 1.0, 2.5}) {
    const auto v = k.samples[k.index2(k.nearest_index(x), k.nearest_index(0.0))];
    CHECK(v.real() == doctest::Approx(std::exp(-std::numbers::pi * x * x)).epsilon(1e-10));
    CHECK(std::abs(v.imag()) < 1e-12);
  }
}

TEST_CASE("kernel fft is unitary (parseval) and linear") {
  const GridField symbol = sample_symbol(spec2(8.0), 2.0, 256);
  const GridField kernel = kernel_fft(symbol, 16.0);
  CHECK(grid_l2_sq(kernel) == doctest::Approx(grid_l2_sq(symbol)).epsilon(1e-10));

  // Linearity against a shifted-lambda partner.
  const GridField other = sample_symbol(spec2(6.0), 2.0, 256);
  GridField mix = symbol;
  for (std::size_t i = 0; i < mix.samples.size(); ++i)
    mix.samples[i] = 2.0 * symbol.samples[i] + std::complex<double>(0, 3) * other.samples[i];
  const GridField k_mix = kernel_fft(std::move(mix));
  const GridField k_other = kernel_fft(other);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < k_mix.samples.size(); ++i) {
    const auto expect = 2.0 * kernel.samples[i] + std::complex<double>(0, 3) * k_other.samples[i];
    worst = std::max(worst, std::abs(k_mix.samples[i] - expect));
    scale = std::max(scale, std::abs(expect));
  }
  CHECK(worst < 1e-12 * std::max(1.0, scale));
}

TEST_CASE("kernel fft of a real radial symbol is real") {
  // Full-circle variant: angular window identically one. The symbol is then
  // real and even, so its transform is real.
  GridField g = make_grid(2, 256, 2.0, Side::fourier);
  for (std::int64_t i = 0; i < g.n; ++i)
    for (std::int64_t j = 0; j < g.n; ++j) {
      const double rho = std::hypot(g.coord(i), g.coord(j));
      const double radial = testing::bumps()->phi(rho);
      g.samples[g.index2(i, j)] = radial == 0.0 ? 0.0 : radial / rho;
    }
  const GridField k = kernel_fft(std::move(g));
  double worst = 0.0;
  for (const auto& v : k.samples) worst = std::max(worst, std::abs(v.imag()));
  CHECK(worst < 1e-11);
}

TEST_CASE("kernel fft rejects insufficient dual range") {
  const GridField symbol = sample_symbol(spec2(8.0), 2.0, 256);
  CHECK_THROWS_AS(kernel_fft(symbol, 64.0), CoverageError);  // range is 32
  GridField wrong = symbol;
  wrong.side = Side::space;
  CHECK_THROWS_AS(kernel_fft(std::move(wrong)), ValidationError);
}

TEST_CASE("reduced route agrees with the fft route across the sector") {
  const double lam = 16.0;
  const GridField kernel = kernel_fft(sample_symbol(spec2(lam), 2.0, 512), 2 * lam);
  const Kernel1dReduction reduce(spec2(lam), testing::cache());
  Rng rng(34);
  double worst = 0.0;
  for (int q = 0; q < 60; ++q) {
    const double r = rng.uniform(0.8 * lam, 1.25 * lam);
    const double t = rng.uniform(-0.1, 0.1);
    const std::int64_t i = kernel.nearest_index(r * std::sin(t));
    const std::int64_t j = kernel.nearest_index(r * std::cos(t));
    const double x = kernel.coord(i), y = kernel.coord(j);
    if (std::hypot(x, y) < 0.8 * lam || std::hypot(x, y) > 1.25 * lam) continue;
    const auto kf = kernel.samples[kernel.index2(i, j)];
    const auto kr = reduce(x, y);
    worst = std::max(worst, std::abs(kf - kr) / std::abs(kr));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("reduced route: tail truncation soundness and stability") {
  const Kernel1dReduction reduce(spec2(24.0), testing::cache());
  const double r = 30.0, t = 0.05;
  const auto base = reduce(r * std::sin(t), r * std::cos(t), 1.0);
  const auto wide = reduce(r * std::sin(t), r * std::cos(t), 2.0);
  CHECK(std::abs(base - wide) / std::abs(base) < 1e-7);
}

TEST_CASE("reduced route: conjugation pairs negated lambda with the antipode") {
  // Conjugating the symbol parameter mirrors the kernel through the origin:
  // K at -lambda evaluated at -x equals the conjugate of K at +lambda at x.
  const Kernel1dReduction plus(spec2(12.0), testing::cache());
  const Kernel1dReduction minus(spec2(-12.0), testing::cache());
  Rng rng(35);
  for (int q = 0; q < 10; ++q) {
    const double r = rng.uniform(9.6, 15.0);
    const double t = rng.uniform(-0.1, 0.1);
    const double x = r * std::sin(t), y = r * std::cos(t);
    const auto a = minus(-x, -y);
    const auto b = std::conj(plus(x, y));
    CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(b)));
  }
  // On the symmetry axis the kernel is real, so conjugation is invisible.
  const auto axis = plus(0.0, 12.0);
  CHECK(std::abs(axis.imag()) < 1e-10);
}

TEST_CASE("reduced route magnitude obeys the profile-transform mass bound") {
  const Kernel1dReduction reduce(spec2(20.0), testing::cache());
  const ProfileFourier& pf = testing::cache().radial_profile_ft(2);
  const double r = 22.0, t = 0.3;
  const auto v = reduce(r * std::sin(t), r * std::cos(t));
  CHECK(std::isfinite(v.real()));
  CHECK(std::abs(v) * r <= 1.2 * pf.l1_norm());
}

TEST_CASE("spherical route: frame geometry and phase values") {
  const SymbolSpec spec = make_spec(3, 8.0, testing::bumps());
  const std::array<double, 3> x = {-0.08, 1.21, 0.03};
  const Frame3 frame = build_frame_d3(x, testing::bumps()->cap3);
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  CHECK(frame.alpha2 == doctest::Approx(x[0] / r).epsilon(1e-14));
  CHECK(frame.alpha1 ==
        doctest::Approx(std::sqrt(r * r - x[0] * x[0]) / r).epsilon(1e-13));
  CHECK(frame.alpha1 * frame.alpha1 + frame.alpha2 * frame.alpha2 ==
        doctest::Approx(1.0).epsilon(1e-13));
  // The frame is orthonormal and e1 has no third component in it.
  const auto dot = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };
  CHECK(dot(frame.f1, frame.f2) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(dot(frame.f1, frame.f3) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(frame.f3[0]) < 1e-14);

  // psi at the chart origin is 2 - 2 alpha1; its theta_2 slope is -2 alpha2.
  const double h = 1e-5;
  const auto psi = [&](double t2, double t3) {
    const double z1 = frame.alpha1 * std::cos(t2) * std::cos(t3) + frame.alpha2 * std::sin(t2);
    return 2.0 - 2.0 * z1;
  };
  CHECK(psi(0, 0) == doctest::Approx(2.0 - 2.0 * frame.alpha1).epsilon(1e-14));
  const double slope = (psi(h, 0.02) - psi(-h, 0.02)) / (2 * h);
  CHECK(slope == doctest::Approx(-2.0 * frame.alpha2).epsilon(1e-7));

  // Degenerate and out-of-cap points are rejected.
  CHECK_THROWS_AS(oscillatory_integral_d3(spec, testing::cache(), {0.0, 1.0, 0.0}),
                  ValidationError);
  CHECK_THROWS_AS(oscillatory_integral_d3(spec, testing::cache(), {1.0, 0.2, 0.0}),
                  ValidationError);
  CHECK_THROWS_AS(oscillatory_integral_d3(spec, testing::cache(), {-0.3, 1.0, 0.0}),
                  ValidationError);
}

TEST_CASE("spherical route: quadrature order is converged") {
  const SymbolSpec spec = make_spec(3, 8.0, testing::bumps());
  const std::array<double, 3> x = {-0.06, 1.2, 0.01};
  const auto coarse = oscillatory_integral_d3(spec, testing::cache(), x, 64);
  const auto fine = oscillatory_integral_d3(spec, testing::cache(), x, 128);
  CHECK(std::abs(coarse - fine) < 1e-9 * std::max(1.0, std::abs(fine)));
}

TEST_CASE("spherical route agrees with the 3d fft kernel" * doctest::timeout(1200)) {
  // Heavy: one 512^3 sample + transform. Evaluation points are exact dual
  // nodes (spacing 1/4) in the admissible cone, at radii where the profile
  // argument lands on or near its plateau.
  const double lam = 16.0;
  const SymbolSpec spec = make_spec(3, lam, testing::bumps());
  const GridField kernel = kernel_fft(sample_symbol(spec, 2.0, 512), 2 * lam);
  double worst = 0.0;
  int checked = 0;
  for (const double y : {3.0, 3.25, 3.5}) {
    const std::array<double, 3> x = {-0.25, y, 0.0};
    const auto direct = oscillatory_integral_d3(spec, testing::cache(), x, 96);
    const auto fft = kernel.samples[kernel.index3(
        kernel.nearest_index(x[0]), kernel.nearest_index(x[1]), kernel.nearest_index(x[2]))];
    REQUIRE(std::abs(direct) > 1e-6);
    worst = std::max(worst, std::abs(std::abs(fft) - std::abs(direct)) / std::abs(direct));
    ++checked;
  }
  CHECK(checked == 3);
  CHECK(worst < 5e-2);
}
