#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "oscillint/scaling.hpp"
#include "oscillint/transform.hpp"

namespace oscillint {

/// Scan of a discrepancy (or magnitude) quantity over a parameter region.
struct RegionScan {
  double lambda = 0.0;
  double r_lo = 0.0, r_hi = 0.0;
  double theta_lo = 0.0, theta_hi = 0.0;
  int n_r = 0, n_theta = 0;
  double sup = 0.0;
  double argmax_r = 0.0, argmax_theta = 0.0;
  std::vector<double> table;  // n_r * n_theta, theta fastest

  nlohmann::json to_json() const;
};

/// Distance between the rescaled planar kernel and its leading form:
///   | r K(x, y) - e^{-2 pi i lambda t} phi(lambda / r) chi(-t) |
/// at x = r sin(t), y = r cos(t), with K from the reduced 1d route.
/// Arguments must satisfy r in [3 lambda / 4, 3 lambda / 2] and
/// t in [-1/10, 1/10].
double leading_term_discrepancy(const Kernel1dReduction& kernel, double r,
                                double theta_xy);

/// Sup of the discrepancy over an n_r x n_theta product grid of the
/// admissible region.
RegionScan leading_term_scan(const SymbolSpec& spec, const TransformCache& cache,
                             int n_r, int n_theta, int threads = 0);

/// Leading term of an n-dimensional oscillatory integral
///   integral of e^{2 pi i lambda psi(u)} a(u) du
/// at a nondegenerate interior minimum of psi at the origin:
///   lambda^{-n/2} e^{i pi n / 4} e^{2 pi i lambda psi(0)} a(0) / sqrt(H),
/// where H > 0 is the Hessian determinant of psi at the origin. The constant
/// convention is validated against the exact Gaussian oracle in the tests.
std::complex<double> stationary_phase_leading(double hessian_det, double psi0_at_origin,
                                              std::complex<double> amplitude_at_origin,
                                              double lambda, int n);

struct StatPhaseRow {
  double lambda = 0.0;
  std::complex<double> quadrature;  // the transverse integral, evaluated directly
  std::complex<double> leading;
  double rel_err = 0.0;
};

struct StatPhaseReport {
  std::array<double, 3> direction{};
  double r_over_lambda = 0.0;
  double psi0_at_origin = 0.0;
  double hessian = 0.0;
  std::vector<StatPhaseRow> rows;
  std::vector<double> error_factors;  // rel_err ratios between consecutive rungs
  ScalingReport quadrature_modulus_fit;
  ScalingReport leading_modulus_fit;

  nlohmann::json to_json() const;
};

/// Transverse integral of the spherical construction at direction `dir` and
/// radius r = r_over_lambda * lambda, evaluated by direct quadrature.
std::complex<double> statphase_transverse_integral(const SymbolSpec& spec,
                                                   const TransformCache& cache,
                                                   const std::array<double, 3>& dir,
                                                   double r_over_lambda);

/// Compare the transverse integral against the stationary-phase leading term
/// across a lambda ladder; fit modulus slopes and error-decay factors.
StatPhaseReport verify_statphase(const std::array<double, 3>& direction,
                                 double r_over_lambda, std::span<const double> ladder,
                                 std::shared_ptr<const BumpSet> bumps,
                                 const TransformCache& cache);

/// Magnitude-and-phase scan of the spherical kernel over a parallelepiped
/// with sides proportional to lambda, placed where the radial profile factor
/// sits on its plateau.
struct ParallelepipedScan {
  double lambda = 0.0;
  double nu = 0.0;
  int grid_n = 0;
  std::array<double, 3> center{};
  std::array<std::array<double, 3>, 3> axes{};  // full edge vectors
  double min_scaled_magnitude = 0.0;            // min |K| * lambda^{3/2}
  double phase_lipschitz = 0.0;                 // max |grad theta| / (2 pi lambda)
  std::int64_t masked = 0;                      // nodes excluded as too small
  std::vector<std::complex<double>> values;     // grid_n^3, last axis fastest

  nlohmann::json to_json() const;
};

ParallelepipedScan parallelepiped_scan(const SymbolSpec& spec, const TransformCache& cache,
                                       double nu = 0.05, int grid_n = 8,
                                       int quad_points = 64, int threads = 0);

}  // namespace oscillint
