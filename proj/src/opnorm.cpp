#include "oscillint/opnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "oscillint/parallel.hpp"
#include "oscillint/quadrature.hpp"
#include "oscillint/transform.hpp"

namespace oscillint {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_coverage(const GridField& field, double radius, const char* who) {
  field.validate();
  if (field.side != Side::space)
    throw ValidationError(std::string(who) + ": expected a space-side field");
  if (field.half_side < radius)
    throw CoverageError(std::string(who) + ": grid range " +
                        std::to_string(field.half_side) + " does not cover radius " +
                        std::to_string(radius));
}
}  // namespace

double kernel_l1_norm(const GridField& kernel, double min_coverage_radius) {
  check_coverage(kernel, min_coverage_radius, "kernel_l1_norm");
  const double cell = kernel.cell_volume();
  const auto n = static_cast<std::int64_t>(kernel.samples.size());
  return cell * pairwise_sum(n, [&](std::int64_t i) {
           return std::abs(kernel.samples[static_cast<std::size_t>(i)]);
         });
}

double ball_volume(int dim, double radius) {
  if (dim == 2) return std::numbers::pi * radius * radius;
  if (dim == 3) return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
  throw ValidationError("ball_volume: dimension must be 2 or 3");
}

double ball_indicator_ft(int dim, double radius, double xi_norm) {
  if (!(radius > 0.0)) throw ValidationError("ball_indicator_ft: radius must be positive");
  const GaussLegendre& gl = gauss_legendre(16);
  // Polar quadrature over the ball; the integrand is even in the angle, so
  // only the cosine survives and the result is real.
  double acc = 0.0;
  if (dim == 2) {
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = 0.5 * radius * (gl.nodes[i] + 1.0);
      double ang = 0.0;
      for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
        const double beta = std::numbers::pi * (gl.nodes[j] + 1.0) * 0.5;
        ang += gl.weights[j] * std::cos(kTwoPi * t * xi_norm * std::cos(beta));
      }
      acc += gl.weights[i] * t * ang;
    }
    return acc * (0.5 * radius) * (0.5 * std::numbers::pi) * 2.0;
  }
  if (dim == 3) {
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = 0.5 * radius * (gl.nodes[i] + 1.0);
      double ang = 0.0;
      for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
        const double mu = gl.nodes[j];  // cosine of the polar angle
        ang += gl.weights[j] * std::cos(kTwoPi * t * xi_norm * mu);
      }
      acc += gl.weights[i] * t * t * ang;
    }
    return acc * (0.5 * radius) * kTwoPi;
  }
  throw ValidationError("ball_indicator_ft: dimension must be 2 or 3");
}

GridField ball_convolution(const GridField& symbol, double radius, double min_dual_range,
                           int threads) {
  symbol.validate();
  if (symbol.side != Side::fourier)
    throw ValidationError("ball_convolution: expected a fourier-side symbol");
  if (!(radius > 0.0 && radius <= 0.1))
    throw ValidationError("ball_convolution: radius must lie in (0, 0.1]");

  // The ball transform is radial and smooth on the scale 1/radius >> box, so
  // a dense interpolation table is exact to roundoff here.
  const double r_max = symbol.half_side * std::sqrt(static_cast<double>(symbol.dim)) + 1.0;
  const int table_n = 2048;
  std::vector<double> table(static_cast<std::size_t>(table_n) + 4);
  const double dt = r_max / table_n;
  for (int i = 0; i < table_n + 4; ++i)
    table[static_cast<std::size_t>(i)] = ball_indicator_ft(symbol.dim, radius, i * dt);
  const auto ft = [&](double xi_norm) {
    const double u = xi_norm / dt;
    auto j = std::clamp<std::int64_t>(static_cast<std::int64_t>(u) - 1, 0, table_n);
    const double x = u - static_cast<double>(j);
    const double w0 = -(x - 1) * (x - 2) * (x - 3) / 6.0;
    const double w1 = x * (x - 2) * (x - 3) / 2.0;
    const double w2 = -x * (x - 1) * (x - 3) / 2.0;
    const double w3 = x * (x - 1) * (x - 2) / 6.0;
    const auto b = static_cast<std::size_t>(j);
    return w0 * table[b] + w1 * table[b + 1] + w2 * table[b + 2] + w3 * table[b + 3];
  };

  GridField product = symbol;
  const std::int64_t n = product.n;
  if (product.dim == 2) {
    parallel_for(
        n,
        [&](std::int64_t i) {
          const double xi = product.coord(i);
          for (std::int64_t j = 0; j < n; ++j) {
            auto& v = product.samples[product.index2(i, j)];
            if (v != std::complex<double>(0.0, 0.0))
              v *= ft(std::hypot(xi, product.coord(j)));
          }
        },
        threads);
  } else {
    parallel_for(
        n,
        [&](std::int64_t i) {
          const double x0 = product.coord(i);
          for (std::int64_t j = 0; j < n; ++j) {
            const double x1 = product.coord(j);
            for (std::int64_t k = 0; k < n; ++k) {
              auto& v = product.samples[product.index3(i, j, k)];
              if (v != std::complex<double>(0.0, 0.0)) {
                const double x2 = product.coord(k);
                v *= ft(std::sqrt(x0 * x0 + x1 * x1 + x2 * x2));
              }
            }
          }
        },
        threads);
  }
  return kernel_fft(std::move(product), min_dual_range);
}

double lp_norm_grid(const GridField& field, double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ValidationError("lp_norm_grid: p must lie in [1, inf)");
  field.validate();
  const double cell = field.cell_volume();
  const auto n = static_cast<std::int64_t>(field.samples.size());
  const double sum = pairwise_sum(n, [&](std::int64_t i) {
    return std::pow(std::abs(field.samples[static_cast<std::size_t>(i)]), p);
  });
  return std::pow(cell * sum, 1.0 / p);
}

double lp_lower_bound_from_convolution(const GridField& convolution, double p, int dim,
                                       double radius) {
  if (!(p >= 1.0)) throw ValidationError("lp_lower_bound: p must lie in [1, inf)");
  const double fnorm = std::pow(ball_volume(dim, radius), 1.0 / p);
  return lp_norm_grid(convolution, p) / fnorm;
}

bool in_concentration_sector(double lambda, double x, double y) {
  const double r = std::hypot(x, y);
  if (r < 0.8 * lambda || r > 1.25 * lambda) return false;
  return y > 0.0 && std::abs(x) < y / 100.0;
}

double sector_l1_norm(const GridField& kernel, double lambda) {
  check_coverage(kernel, 1.25 * lambda, "sector_l1_norm");
  const double cell = kernel.cell_volume();
  if (kernel.dim != 2) throw ValidationError("sector_l1_norm: planar fields only");
  double acc = 0.0;
  for (std::int64_t i = 0; i < kernel.n; ++i) {
    const double x = kernel.coord(i);
    for (std::int64_t j = 0; j < kernel.n; ++j) {
      const double y = kernel.coord(j);
      if (in_concentration_sector(lambda, x, y))
        acc += std::abs(kernel.samples[kernel.index2(i, j)]);
    }
  }
  return acc * cell;
}

double sector_min_abs(const GridField& field, double lambda) {
  check_coverage(field, 1.25 * lambda, "sector_min_abs");
  if (field.dim != 2) throw ValidationError("sector_min_abs: planar fields only");
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::int64_t i = 0; i < field.n; ++i) {
    const double x = field.coord(i);
    for (std::int64_t j = 0; j < field.n; ++j) {
      const double y = field.coord(j);
      if (in_concentration_sector(lambda, x, y)) {
        best = std::min(best, std::abs(field.samples[field.index2(i, j)]));
        found = true;
      }
    }
  }
  if (!found) throw CoverageError("sector_min_abs: no grid nodes inside the sector");
  return best;
}

}  // namespace oscillint
