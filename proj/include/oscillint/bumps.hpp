#pragma once

#include <memory>
#include <span>
#include <vector>

#include <json.hpp>

#include "oscillint/errors.hpp"
#include "oscillint/quadrature.hpp"

namespace oscillint {

/// C-infinity step: 0 for t <= 0, 1 for t >= 1, strictly increasing between.
double smooth_step(double t);

/// Compactly supported C-infinity plateau bump.
///
/// Exactly zero outside [support_lo, support_hi], exactly `height` on
/// [plateau_lo, plateau_hi], and glued with mollifier steps on the ramps, so
/// every derivative stays bounded. Evaluation is pure and thread-safe.
class SmoothBump {
 public:
  SmoothBump(double support_lo, double plateau_lo, double plateau_hi,
             double support_hi, double height = 1.0);

  double operator()(double t) const;

  double support_lo() const { return a_; }
  double support_hi() const { return b_; }
  double plateau_lo() const { return c_; }
  double plateau_hi() const { return d_; }
  double height() const { return height_; }

  /// Minimum over the plateau, dense-sampled once at construction. Tests
  /// compare plateau values against this cached floor.
  double plateau_floor() const { return plateau_floor_; }

  nlohmann::json to_json() const;
  static SmoothBump from_json(const nlohmann::json& j);

 private:
  double a_, c_, d_, b_, height_;
  double plateau_floor_;
};

/// Cumulative integral of a smooth integrand on [lo, hi], stored as a dense
/// Hermite-interpolated table. Reads 0 below lo and the total mass above hi.
class PrefixIntegralTable {
 public:
  PrefixIntegralTable() = default;

  template <class F>
  PrefixIntegralTable(const F& f, double lo, double hi, int cells = 4096)
      : lo_(lo), hi_(hi), dt_((hi - lo) / cells) {
    values_.resize(static_cast<std::size_t>(cells) + 1);
    slopes_.resize(static_cast<std::size_t>(cells) + 1);
    const GaussLegendre& gl = gauss_legendre(8);
    double acc = 0.0;
    values_[0] = 0.0;
    slopes_[0] = f(lo);
    for (int c = 0; c < cells; ++c) {
      const double a = lo_ + c * dt_;
      double cell = 0.0;
      for (std::size_t q = 0; q < gl.nodes.size(); ++q)
        cell += gl.weights[q] * f(a + 0.5 * dt_ * (gl.nodes[q] + 1.0));
      acc += 0.5 * dt_ * cell;
      values_[static_cast<std::size_t>(c) + 1] = acc;
      slopes_[static_cast<std::size_t>(c) + 1] = f(a + dt_);
    }
  }

  double operator()(double t) const;
  double total() const { return values_.empty() ? 0.0 : values_.back(); }

 private:
  double lo_ = 0.0, hi_ = 0.0, dt_ = 0.0;
  std::vector<double> values_;
  std::vector<double> slopes_;  // integrand at the nodes
};

/// Smooth 2*pi-periodic phase that equals 2*pi*theta exactly on [-1, 1].
///
/// Built from its derivative: a plateau window holding slope 2*pi on [-1, 1]
/// minus a balanced return bump placed on (1, pi), scaled so one full period
/// integrates to zero. The derivative never exceeds 2*pi in magnitude, which
/// keeps the spectral footprint of e^{i lambda phase} tight.
class PeriodicPhase {
 public:
  PeriodicPhase();

  double operator()(double theta) const;

  double period() const;        // 2*pi
  double linear_slope() const;  // 2*pi
  double linear_window() const { return 1.0; }
  double slope_bound() const { return slope_bound_; }

 private:
  std::shared_ptr<const SmoothBump> keep_;  // slope window, plateau [-1, 1]
  std::shared_ptr<const SmoothBump> back_;  // return bump on (1, pi)
  PrefixIntegralTable keep_tail_;           // integral of keep_ over [1, ...]
  PrefixIntegralTable back_tail_;           // integral of back_
  double balance_ = 0.0;
  double slope_bound_ = 0.0;
};

/// Phase 2 - 2*zeta_1 on the unit sphere S^{d-1}.
class SphericalPhase {
 public:
  explicit SphericalPhase(int dim);
  double operator()(std::span<const double> zeta) const;
  int dim() const { return dim_; }

 private:
  int dim_;
};

/// Smooth cutoff supported on the spherical cap of the given angular radius
/// about (1, 0, ..., 0); positive at the center, exactly zero at and beyond
/// the cap boundary.
class SphereCutoff {
 public:
  SphereCutoff(int dim, double angular_radius);
  double operator()(std::span<const double> zeta) const;

  int dim() const { return dim_; }
  double angular_radius() const { return eps_; }

 private:
  int dim_;
  double eps_;
  double w_eps_;  // squared chordal radius of the cap
};

/// The bundle of cutoffs and phases every construction in this project uses.
struct BumpSet {
  SmoothBump phi;        // radial profile: support [1/2, 3/2], plateau [2/3, 4/3]
  SmoothBump chi;        // angular window: support [-1/2, 1/2], plateau [-1/3, 1/3]
  SmoothBump phi_tilde;  // radial profile for the d >= 3 construction
  PeriodicPhase phase;   // periodic angular phase, d = 2
  SphereCutoff cap3;     // spherical cap cutoff, d = 3

  static std::shared_ptr<const BumpSet> standard();
  static std::shared_ptr<const BumpSet> from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

}  // namespace oscillint
