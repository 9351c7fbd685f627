#include "oscillint/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oscillint/parallel.hpp"
#include "oscillint/quadrature.hpp"

namespace oscillint {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::mutex& fftw_planner_mutex() {
  static std::mutex mu;
  return mu;
}

void run_fft_inplace(std::complex<double>* data, int dim, std::int64_t n) {
  fftw_plan plan;
  {
    std::scoped_lock lock(fftw_planner_mutex());
    int dims[3] = {static_cast<int>(n), static_cast<int>(n), static_cast<int>(n)};
    plan = fftw_plan_dft(dim, dims, reinterpret_cast<fftw_complex*>(data),
                         reinterpret_cast<fftw_complex*>(data), FFTW_FORWARD,
                         FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("kernel_fft: fftw plan creation failed");
  fftw_execute(plan);
  {
    std::scoped_lock lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace

ProfileFourier::ProfileFourier(SmoothBump profile, int radial_power)
    : profile_(std::move(profile)), power_(radial_power) {
  if (profile_.support_lo() < 0.0)
    throw ValidationError("ProfileFourier: radial profiles live on [0, inf)");
  if (profile_.support_hi() > 8.0)
    throw ValidationError("ProfileFourier: profile support exceeds the sampling period");

  // One oversampled FFT builds the whole cache. Sampling step 2^-13 pushes
  // the aliased copies beyond |s| ~ 7000, where the transform of a mollifier
  // ramp is far below the cache accuracy target.
  const double period = 1024.0;
  const std::int64_t m = static_cast<std::int64_t>(period) * 8192;  // 2^23
  const double h = period / static_cast<double>(m);
  std::vector<std::complex<double>> work(static_cast<std::size_t>(m));
  parallel_for_chunks(m, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t j = lo; j < hi; ++j) {
      const double rho = static_cast<double>(j) * h;
      const double g = profile_(rho);
      work[static_cast<std::size_t>(j)] =
          g == 0.0 ? 0.0 : g * std::pow(rho, static_cast<double>(power_));
    }
  });
  run_fft_inplace(work.data(), 1, m);

  ds_ = 1.0 / period;
  const std::int64_t cache_n = 1000 * static_cast<std::int64_t>(period) + 8;
  cache_.resize(static_cast<std::size_t>(cache_n) + 1);
  for (std::int64_t k = 0; k <= cache_n; ++k)
    cache_[static_cast<std::size_t>(k)] = h * work[static_cast<std::size_t>(k)];

  suffix_env_.resize(cache_.size());
  double env = 0.0;
  for (std::size_t i = cache_.size(); i-- > 0;) {
    env = std::max(env, std::abs(cache_[i]));
    suffix_env_[i] = env;
  }
  l1_ = 0.0;
  for (const auto& v : cache_) l1_ += std::abs(v) * ds_;
  l1_ *= 2.0;  // both signs of s
}

double ProfileFourier::cache_limit() const {
  return static_cast<double>(cache_.size() - 1) * ds_;
}

std::complex<double> ProfileFourier::operator()(double s) const {
  const double as = std::abs(s);
  if (as > cache_limit() - 2.0 * ds_) return direct(s);
  const double u = as / ds_;
  auto j = static_cast<std::int64_t>(u);
  j = std::clamp<std::int64_t>(j - 1, 0, static_cast<std::int64_t>(cache_.size()) - 4);
  const double x = u - static_cast<double>(j);  // in [0, 3] across nodes j..j+3
  // 4-point Lagrange weights at offsets 0..3.
  const double w0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
  const double w1 = x * (x - 2.0) * (x - 3.0) / 2.0;
  const double w2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
  const double w3 = x * (x - 1.0) * (x - 2.0) / 6.0;
  const std::size_t b = static_cast<std::size_t>(j);
  const std::complex<double> v =
      w0 * cache_[b] + w1 * cache_[b + 1] + w2 * cache_[b + 2] + w3 * cache_[b + 3];
  return s < 0.0 ? std::conj(v) : v;
}

std::complex<double> ProfileFourier::direct(double s, double abs_tol) const {
  QuadratureOptions opt;
  opt.abs_tol = abs_tol;
  opt.max_panel = std::min(0.25, 0.5 / std::max(1.0, std::abs(s)));
  const double lo = profile_.support_lo(), hi = profile_.support_hi();
  return integrate_adaptive(
      [&](double rho) {
        const double g = profile_(rho) * std::pow(rho, static_cast<double>(power_));
        return std::polar(g, -kTwoPi * s * rho);
      },
      lo, hi, opt);
}

double ProfileFourier::envelope(double s) const {
  const double as = std::abs(s);
  auto j = static_cast<std::size_t>(std::floor(as / ds_));
  if (j >= suffix_env_.size()) j = suffix_env_.size() - 1;
  return suffix_env_[j];
}

double ProfileFourier::tail_cutoff(double tiny) const {
  const auto it = std::upper_bound(suffix_env_.begin(), suffix_env_.end(), tiny,
                                   [](double t, double e) { return t > e; });
  if (it == suffix_env_.end()) return cache_limit();
  return static_cast<double>(it - suffix_env_.begin()) * ds_;
}

TransformCache::TransformCache(std::shared_ptr<const BumpSet> bumps)
    : bumps_(std::move(bumps)) {
  if (!bumps_) throw ValidationError("TransformCache: missing bump set");
}

const ProfileFourier& TransformCache::radial_profile_ft(int dim) const {
  if (dim == 2) {
    std::call_once(once2_, [&] { pf2_ = std::make_unique<ProfileFourier>(bumps_->phi, 0); });
    return *pf2_;
  }
  if (dim == 3) {
    std::call_once(once3_,
                   [&] { pf3_ = std::make_unique<ProfileFourier>(bumps_->phi_tilde, 2); });
    return *pf3_;
  }
  throw ValidationError("TransformCache: dimension must be 2 or 3");
}

GridField kernel_fft(GridField symbol, double min_dual_range) {
  symbol.validate();
  if (symbol.side != Side::fourier)
    throw ValidationError("kernel_fft: input must be a fourier-side field");
  const std::int64_t n = symbol.n;
  const double dual_range = static_cast<double>(n) / (4.0 * symbol.half_side);
  if (min_dual_range > 0.0 && dual_range < min_dual_range)
    throw CoverageError("kernel_fft: dual range " + std::to_string(dual_range) +
                        " does not cover the requested radius " +
                        std::to_string(min_dual_range));

  const int d = symbol.dim;
  run_fft_inplace(symbol.samples.data(), d, n);

  // Continuum normalization: K(x_m) = h^d (-1)^{sum of output coords} *
  // FFT[(j + n/2) mod n per axis]. The index shift is an involution, so it
  // runs in place as a swap pass, followed by the sign-and-scale pass.
  const std::int64_t half = n / 2;
  auto& v = symbol.samples;
  const double cell = std::pow(symbol.spacing(), d);

  if (d == 2) {
    parallel_for(half, [&](std::int64_t i) {
      for (std::int64_t j = 0; j < n; ++j) {
        const std::int64_t pi_ = i + half;
        const std::int64_t pj = j < half ? j + half : j - half;
        std::swap(v[symbol.index2(i, j)], v[symbol.index2(pi_, pj)]);
      }
    });
    parallel_for(n, [&](std::int64_t i) {
      for (std::int64_t j = 0; j < n; ++j) {
        const double sign = ((i + j) & 1) ? -cell : cell;
        v[symbol.index2(i, j)] *= sign;
      }
    });
  } else {
    parallel_for(half, [&](std::int64_t i) {
      for (std::int64_t j = 0; j < n; ++j) {
        const std::int64_t pj = j < half ? j + half : j - half;
        for (std::int64_t k = 0; k < n; ++k) {
          const std::int64_t pk = k < half ? k + half : k - half;
          std::swap(v[symbol.index3(i, j, k)], v[symbol.index3(i + half, pj, pk)]);
        }
      }
    });
    parallel_for(n, [&](std::int64_t i) {
      for (std::int64_t j = 0; j < n; ++j)
        for (std::int64_t k = 0; k < n; ++k) {
          const double sign = ((i + j + k) & 1) ? -cell : cell;
          v[symbol.index3(i, j, k)] *= sign;
        }
    });
  }

  symbol.side = Side::space;
  symbol.half_side = dual_range;
  return symbol;
}

Kernel1dReduction::Kernel1dReduction(SymbolSpec spec, const TransformCache& cache)
    : spec_(std::move(spec)), profile_ft_(&cache.radial_profile_ft(2)) {
  spec_.validate();
  if (spec_.dim != 2)
    throw ValidationError("Kernel1dReduction: the reduced route is planar (dim 2)");
}

std::complex<double> Kernel1dReduction::operator()(double x, double y,
                                                   double tail_scale) const {
  const double r = std::hypot(x, y);
  if (r == 0.0) throw ValidationError("Kernel1dReduction: undefined at the origin");
  const double theta_xy = std::atan2(x, y);  // dual convention: x = r sin, y = r cos
  const BumpSet& bumps = *spec_.bumps;
  const ProfileFourier& pf = *profile_ft_;
  const double lam = spec_.lambda;

  // The angular window limits u = s/r to [theta_xy - w_chi, theta_xy + w_chi];
  // inside it the profile transform is negligible except where |r sin u| stays
  // under the Schwartz-tail cutoff, i.e. u near 0 or +-pi.
  const double w_chi = bumps.chi.support_hi();
  const double u_lo = theta_xy + bumps.chi.support_lo();
  const double u_hi = theta_xy + w_chi;
  const double tiny = 5e-9 / std::max(1.0, r);
  const double sigma0 = pf.tail_cutoff(tiny) * tail_scale;

  std::vector<std::pair<double, double>> windows;
  if (sigma0 >= r) {
    windows.emplace_back(u_lo, u_hi);
  } else {
    const double w = std::asin(sigma0 / r);
    const double centers[3] = {-std::numbers::pi, 0.0, std::numbers::pi};
    for (const double c : centers) {
      const double a = std::max(u_lo, c - w);
      const double b = std::min(u_hi, c + w);
      if (b > a) windows.emplace_back(a, b);
    }
    // Merge overlaps so no subinterval is integrated twice.
    std::vector<std::pair<double, double>> merged;
    for (const auto& win : windows) {
      if (!merged.empty() && win.first <= merged.back().second)
        merged.back().second = std::max(merged.back().second, win.second);
      else
        merged.push_back(win);
    }
    windows = std::move(merged);
  }
  if (windows.empty()) return 0.0;

  QuadratureOptions opt;
  opt.abs_tol = 1e-10 / static_cast<double>(windows.size());
  opt.max_panel = 0.25;

  std::complex<double> integral = 0.0;
  for (const auto& [a, b] : windows) {
    integral += integrate_adaptive(
        [&](double s) {
          const double u = s / r;
          const double window = bumps.chi(u - theta_xy);
          if (window == 0.0) return std::complex<double>(0.0, 0.0);
          const std::complex<double> f = pf(r * std::sin(u));
          return f * std::polar(window, kTwoPi * (lam / r) * s);
        },
        a * r, b * r, opt);
  }
  return integral * std::polar(1.0 / r, -kTwoPi * lam * theta_xy);
}

Frame3 build_frame_d3(const std::array<double, 3>& x, const SphereCutoff& cap) {
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  if (r == 0.0) throw ValidationError("build_frame_d3: undefined at the origin");
  const std::array<double, 3> dir = {x[0] / r, x[1] / r, x[2] / r};
  if (dir[0] == 0.0)
    throw ValidationError("build_frame_d3: first coordinate must be nonzero");

  // f1: direction maximizing zeta_1 on the great circle orthogonal to x, the
  // normalized projection of e1 onto the orthogonal complement of x.
  std::array<double, 3> f1 = {1.0 - dir[0] * dir[0], -dir[0] * dir[1], -dir[0] * dir[2]};
  const double f1n = std::sqrt(f1[0] * f1[0] + f1[1] * f1[1] + f1[2] * f1[2]);
  if (f1n < 1e-14)
    throw ValidationError("build_frame_d3: evaluation direction parallel to the cap center");
  for (auto& c : f1) c /= f1n;

  Frame3 frame;
  frame.f1 = f1;
  frame.f2 = dir;
  frame.f3 = {f1[1] * dir[2] - f1[2] * dir[1], f1[2] * dir[0] - f1[0] * dir[2],
              f1[0] * dir[1] - f1[1] * dir[0]};
  frame.alpha1 = f1[0];
  frame.alpha2 = dir[0];
  frame.cap_center_angle = std::acos(std::clamp(f1[0], -1.0, 1.0));
  if (frame.cap_center_angle >= cap.angular_radius())
    throw ValidationError(
        "build_frame_d3: adapted frame center falls outside the cap support");
  return frame;
}

std::complex<double> oscillatory_integral_d3(const SymbolSpec& spec,
                                             const TransformCache& cache,
                                             const std::array<double, 3>& x,
                                             int quad_points) {
  spec.validate();
  if (spec.dim != 3)
    throw ValidationError("oscillatory_integral_d3: spherical construction only (dim 3)");
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  if (r == 0.0) throw ValidationError("oscillatory_integral_d3: undefined at the origin");
  const double cone_angle = std::acos(std::clamp(x[1] / r, -1.0, 1.0));
  if (cone_angle > 0.2)
    throw ValidationError(
        "oscillatory_integral_d3: direction outside the admissible cone about (0,1,0)");

  const BumpSet& bumps = *spec.bumps;
  const Frame3 frame = build_frame_d3(x, bumps.cap3);
  const ProfileFourier& pf = cache.radial_profile_ft(3);
  const double lam = spec.lambda;

  // Chart half-width: the cap support lies within cap_center_angle + eps of
  // the chart origin; a small margin keeps the cutoff's support interior.
  const double span =
      std::min(0.75, frame.cap_center_angle + bumps.cap3.angular_radius() + 0.02);

  const GaussLegendre& gl = gauss_legendre(quad_points);
  std::complex<double> acc = 0.0;
  std::array<double, 3> zeta;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double t2 = span * gl.nodes[i];
    const double c2 = std::cos(t2), s2 = std::sin(t2);
    std::complex<double> row = 0.0;
    for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
      const double t3 = span * gl.nodes[j];
      const double c3 = std::cos(t3), s3 = std::sin(t3);
      for (int a = 0; a < 3; ++a)
        zeta[static_cast<std::size_t>(a)] = c2 * c3 * frame.f1[static_cast<std::size_t>(a)] +
                                            s2 * frame.f2[static_cast<std::size_t>(a)] +
                                            c2 * s3 * frame.f3[static_cast<std::size_t>(a)];
      const double cut = bumps.cap3(zeta);
      if (cut == 0.0) continue;
      const double psi = 2.0 - 2.0 * (frame.alpha1 * c2 * c3 + frame.alpha2 * s2);
      const std::complex<double> f = pf(r * s2);
      row += gl.weights[j] * f * std::polar(cut * c2, kTwoPi * lam * psi);
    }
    acc += gl.weights[i] * row;
  }
  return acc * (span * span);
}

}  // namespace oscillint
