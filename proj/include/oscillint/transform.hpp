#pragma once

#include <array>
#include <complex>
#include <memory>
#include <mutex>

#include "oscillint/grid.hpp"
#include "oscillint/symbol.hpp"

namespace oscillint {

/// Fourier transform of a compactly supported radial profile,
///   F(s) = integral of rho^p * profile(rho) * e^{-2 pi i s rho} d rho.
///
/// Values on |s| <= 1000 come from a dense cache (node spacing 2^-10, cubic
/// interpolation, interpolation error well under 1e-9); outside the cache the
/// value falls back to adaptive quadrature at absolute tolerance 1e-12. The
/// cache is built once by an oversampled FFT and is read-only afterwards, so
/// evaluation is thread-safe.
class ProfileFourier {
 public:
  explicit ProfileFourier(SmoothBump profile, int radial_power = 0);

  std::complex<double> operator()(double s) const;

  /// Adaptive quadrature evaluation; the reference the cache is checked against.
  std::complex<double> direct(double s, double abs_tol = 1e-12) const;

  /// Monotone majorant of |F| on [s, cache limit]; the Schwartz-tail envelope.
  double envelope(double s) const;

  /// Smallest cached s with envelope(s) <= tiny (cache limit if none).
  double tail_cutoff(double tiny) const;

  /// L1 norm of the cached restriction, integral of |F| over |s| <= limit.
  double l1_norm() const { return l1_; }

  double cache_limit() const;
  double cache_spacing() const { return ds_; }

 private:
  SmoothBump profile_;
  int power_;
  double ds_;
  std::vector<std::complex<double>> cache_;  // F(k * ds), k >= 0; F(-s) = conj F(s)
  std::vector<double> suffix_env_;
  double l1_ = 0.0;
};

/// Lazily built per-bump-set numerical tables shared by the kernel routes.
class TransformCache {
 public:
  explicit TransformCache(std::shared_ptr<const BumpSet> bumps);

  const BumpSet& bumps() const { return *bumps_; }
  std::shared_ptr<const BumpSet> bumps_ptr() const { return bumps_; }

  /// dim 2: transform of phi. dim 3: transform of rho^2 * phi_tilde (the
  /// spherical volume factor folded into the radial profile).
  const ProfileFourier& radial_profile_ft(int dim) const;

 private:
  std::shared_ptr<const BumpSet> bumps_;
  mutable std::once_flag once2_, once3_;
  mutable std::unique_ptr<ProfileFourier> pf2_, pf3_;
};

/// Discrete approximation of the continuum transform
///   K(x) = integral of M(xi) e^{-2 pi i <x, xi>} d xi
/// on the dual grid (spacing 1/(2L), range n/(4L)): FFT scaled by the cell
/// volume with the phase shift for the centered box. Rejects non-fourier
/// inputs and dual ranges below `min_dual_range`.
GridField kernel_fft(GridField symbol, double min_dual_range = 0.0);

/// Planar kernel values through the dimension-reduced route: for x = r sin(t),
/// y = r cos(t) with t the dual polar angle,
///   K(x, y) = (1/r) e^{-2 pi i lambda t} *
///             integral of F(r sin(s/r)) e^{2 pi i (lambda/r) s} chi(s/r - t) ds,
/// with F the transform of the radial profile. The integral is truncated where
/// the Schwartz tail of F contributes less than 1e-8, with the truncation
/// windows scalable for soundness checks.
class Kernel1dReduction {
 public:
  Kernel1dReduction(SymbolSpec spec, const TransformCache& cache);

  std::complex<double> operator()(double x, double y, double tail_scale = 1.0) const;

  const SymbolSpec& spec() const { return spec_; }

 private:
  SymbolSpec spec_;
  const ProfileFourier* profile_ft_;
};

/// Orthonormal frame adapted to an evaluation point x of the spherical
/// construction: f1 is the phase minimizer on the great circle orthogonal to
/// x, f2 = x/|x|, f3 completes the frame. alpha holds the coordinates of the
/// cap center e1 in this frame (its f3 component vanishes by construction).
struct Frame3 {
  std::array<double, 3> f1, f2, f3;
  double alpha1 = 0.0, alpha2 = 0.0;
  double cap_center_angle = 0.0;  // angle between f1 and e1
};

Frame3 build_frame_d3(const std::array<double, 3>& x, const SphereCutoff& cap);

/// Kernel of the spherical construction evaluated by quadrature of the
/// two-dimensional reduced integral over the cap chart. Rejects directions
/// outside the admissible cone (0.2 radians about (0,1,0)), points with
/// vanishing first coordinate, and points whose adapted frame leaves the cap.
std::complex<double> oscillatory_integral_d3(const SymbolSpec& spec,
                                             const TransformCache& cache,
                                             const std::array<double, 3>& x,
                                             int quad_points = 64);

}  // namespace oscillint
