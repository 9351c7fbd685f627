#pragma once

#include "oscillint/grid.hpp"
#include "oscillint/scaling.hpp"
#include "oscillint/symbol.hpp"

namespace oscillint {

/// Riemann sum of |K| times the cell volume over a space-side field. The grid
/// must cover the ball of radius `min_coverage_radius`.
double kernel_l1_norm(const GridField& kernel, double min_coverage_radius);

/// Fourier transform of the indicator of the ball of the given radius,
/// evaluated at frequency magnitude xi_norm by direct quadrature over the
/// ball (cheap: only small frequencies ever matter here).
double ball_indicator_ft(int dim, double radius, double xi_norm);

double ball_volume(int dim, double radius);

/// Convolution of the kernel with the small-ball indicator, computed
/// spectrally: multiply the symbol samples by the ball transform and push the
/// product through kernel_fft. Radius must lie in (0, 0.1].
GridField ball_convolution(const GridField& symbol, double radius,
                           double min_dual_range = 0.0, int threads = 0);

/// Discrete p-norm: (sum |v|^p * cell volume)^(1/p), deterministic pairwise
/// reduction.
double lp_norm_grid(const GridField& field, double p);

/// ||K * f||_p / ||f||_p for the ball indicator f, a lower bound for the
/// multiplier operator norm up to discretization. The denominator uses the
/// analytic ball volume.
double lp_lower_bound_from_convolution(const GridField& convolution, double p, int dim,
                                       double radius);

/// The planar annular sector where the kernel magnitude concentrates:
/// radius in [4 lambda / 5, 5 lambda / 4], |x| / y < 1/100 with y > 0.
bool in_concentration_sector(double lambda, double x, double y);

/// Riemann sum of |v| over the concentration sector only.
double sector_l1_norm(const GridField& kernel, double lambda);

/// Minimum of |v| over sector nodes (for the pointwise convolution bound).
double sector_min_abs(const GridField& field, double lambda);

}  // namespace oscillint
