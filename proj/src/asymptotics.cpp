#include "oscillint/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "oscillint/parallel.hpp"
#include "oscillint/quadrature.hpp"

namespace oscillint {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kThetaWindow = 0.1;
}  // namespace

nlohmann::json RegionScan::to_json() const {
  return {{"lambda", lambda},
          {"region",
           {{"r_lo", r_lo}, {"r_hi", r_hi}, {"theta_lo", theta_lo}, {"theta_hi", theta_hi}}},
          {"n_r", n_r},
          {"n_theta", n_theta},
          {"sup_discrepancy", sup},
          {"argmax", {{"r", argmax_r}, {"theta", argmax_theta}}}};
}

double leading_term_discrepancy(const Kernel1dReduction& kernel, double r,
                                double theta_xy) {
  const SymbolSpec& spec = kernel.spec();
  const double lam = spec.lambda;
  if (!(r >= 0.75 * lam && r <= 1.5 * lam))
    throw ValidationError("leading_term_discrepancy: r outside [3 lambda/4, 3 lambda/2]");
  if (!(theta_xy >= -kThetaWindow && theta_xy <= kThetaWindow))
    throw ValidationError("leading_term_discrepancy: angle outside [-1/10, 1/10]");
  const double x = r * std::sin(theta_xy);
  const double y = r * std::cos(theta_xy);
  const std::complex<double> value = kernel(x, y) * r;
  const std::complex<double> target =
      std::polar(spec.bumps->phi(lam / r) * spec.bumps->chi(-theta_xy), -kTwoPi * lam * theta_xy);
  return std::abs(value - target);
}

RegionScan leading_term_scan(const SymbolSpec& spec, const TransformCache& cache,
                             int n_r, int n_theta, int threads) {
  if (n_r < 16 || n_theta < 16)
    throw ValidationError("leading_term_scan: need at least a 16 x 16 grid");
  const Kernel1dReduction kernel(spec, cache);
  RegionScan scan;
  scan.lambda = spec.lambda;
  scan.r_lo = 0.75 * spec.lambda;
  scan.r_hi = 1.5 * spec.lambda;
  scan.theta_lo = -kThetaWindow;
  scan.theta_hi = kThetaWindow;
  scan.n_r = n_r;
  scan.n_theta = n_theta;
  scan.table.assign(static_cast<std::size_t>(n_r) * n_theta, 0.0);

  parallel_for(
      static_cast<std::int64_t>(n_r) * n_theta,
      [&](std::int64_t idx) {
        const int ir = static_cast<int>(idx / n_theta);
        const int it = static_cast<int>(idx % n_theta);
        const double r = scan.r_lo + (scan.r_hi - scan.r_lo) * ir / (n_r - 1);
        const double t = scan.theta_lo + (scan.theta_hi - scan.theta_lo) * it / (n_theta - 1);
        scan.table[static_cast<std::size_t>(idx)] = leading_term_discrepancy(kernel, r, t);
      },
      threads);

  scan.sup = -1.0;
  for (int ir = 0; ir < n_r; ++ir)
    for (int it = 0; it < n_theta; ++it) {
      const double v = scan.table[static_cast<std::size_t>(ir) * n_theta + it];
      if (v > scan.sup) {
        scan.sup = v;
        scan.argmax_r = scan.r_lo + (scan.r_hi - scan.r_lo) * ir / (n_r - 1);
        scan.argmax_theta =
            scan.theta_lo + (scan.theta_hi - scan.theta_lo) * it / (n_theta - 1);
      }
    }
  return scan;
}

std::complex<double> stationary_phase_leading(double hessian_det, double psi0_at_origin,
                                              std::complex<double> amplitude_at_origin,
                                              double lambda, int n) {
  if (!(hessian_det > 0.0))
    throw ValidationError("stationary_phase_leading: Hessian determinant must be positive");
  if (n < 1) throw ValidationError("stationary_phase_leading: dimension must be positive");
  if (!(lambda > 0.0)) throw ValidationError("stationary_phase_leading: lambda must be positive");
  const double modulus = std::pow(lambda, -0.5 * n) / std::sqrt(hessian_det);
  const double phase = std::numbers::pi * n / 4.0 + kTwoPi * lambda * psi0_at_origin;
  return amplitude_at_origin * std::polar(modulus, phase);
}

nlohmann::json StatPhaseReport::to_json() const {
  nlohmann::json out_rows = nlohmann::json::array();
  for (const auto& row : rows)
    out_rows.push_back({{"lambda", row.lambda},
                        {"quadrature_re", row.quadrature.real()},
                        {"quadrature_im", row.quadrature.imag()},
                        {"leading_re", row.leading.real()},
                        {"leading_im", row.leading.imag()},
                        {"rel_err", row.rel_err}});
  return {{"direction", {direction[0], direction[1], direction[2]}},
          {"r_over_lambda", r_over_lambda},
          {"psi0_at_origin", psi0_at_origin},
          {"hessian", hessian},
          {"rows", out_rows},
          {"error_factors", error_factors},
          {"quadrature_modulus_fit", quadrature_modulus_fit.to_json()},
          {"leading_modulus_fit", leading_modulus_fit.to_json()}};
}

std::complex<double> statphase_transverse_integral(const SymbolSpec& spec,
                                                   const TransformCache& cache,
                                                   const std::array<double, 3>& dir,
                                                   double r_over_lambda) {
  spec.validate();
  if (spec.dim != 3)
    throw ValidationError("statphase_transverse_integral: spherical construction only");
  (void)cache;
  const BumpSet& bumps = *spec.bumps;
  const Frame3 frame = build_frame_d3(dir, bumps.cap3);
  const double lam = spec.lambda;
  const double alpha1 = frame.alpha1, alpha2 = frame.alpha2;

  // The axial direction integrates exactly to the radial profile (with the
  // spherical volume factor) at argument (lambda / r) * (-2 alpha2).
  const double arg = (-2.0 * alpha2) / r_over_lambda;
  const double radial = arg * arg * bumps.phi_tilde(arg);

  const double span = std::min(0.75, frame.cap_center_angle + bumps.cap3.angular_radius() + 0.02);
  QuadratureOptions opt;
  opt.abs_tol = 1e-12;
  opt.max_panel = span / 64.0;
  std::array<double, 3> zeta;
  const std::complex<double> angular = integrate_adaptive(
      [&](double t3) {
        const double c3 = std::cos(t3), s3 = std::sin(t3);
        for (int a = 0; a < 3; ++a)
          zeta[static_cast<std::size_t>(a)] = c3 * frame.f1[static_cast<std::size_t>(a)] +
                                              s3 * frame.f3[static_cast<std::size_t>(a)];
        const double cut = bumps.cap3(zeta);
        if (cut == 0.0) return std::complex<double>(0.0, 0.0);
        return std::polar(cut, kTwoPi * lam * (-2.0 * alpha1 * c3));
      },
      -span, span, opt);
  return radial * angular;
}

StatPhaseReport verify_statphase(const std::array<double, 3>& direction,
                                 double r_over_lambda, std::span<const double> ladder,
                                 std::shared_ptr<const BumpSet> bumps,
                                 const TransformCache& cache) {
  if (ladder.size() < 3)
    throw ValidationError("verify_statphase: need at least three ladder points");
  StatPhaseReport rep;
  rep.direction = direction;
  rep.r_over_lambda = r_over_lambda;

  const Frame3 frame = build_frame_d3(direction, bumps->cap3);
  rep.psi0_at_origin = -2.0 * frame.alpha1;
  rep.hessian = 2.0 * frame.alpha1;

  const double arg = (-2.0 * frame.alpha2) / r_over_lambda;
  const double radial = arg * arg * bumps->phi_tilde(arg);
  const double cut_center = bumps->cap3(std::span<const double>(frame.f1));

  std::vector<std::pair<double, double>> quad_ladder, lead_ladder;
  for (const double lam : ladder) {
    SymbolSpec spec = make_spec(3, lam, bumps);
    StatPhaseRow row;
    row.lambda = lam;
    row.quadrature = statphase_transverse_integral(spec, cache, direction, r_over_lambda);
    row.leading = stationary_phase_leading(rep.hessian, rep.psi0_at_origin,
                                           radial * cut_center, lam, 1);
    row.rel_err = std::abs(row.quadrature - row.leading) / std::abs(row.quadrature);
    quad_ladder.emplace_back(lam, std::abs(row.quadrature));
    lead_ladder.emplace_back(lam, std::abs(row.leading));
    rep.rows.push_back(row);
  }
  for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i)
    rep.error_factors.push_back(rep.rows[i + 1].rel_err / rep.rows[i].rel_err);
  rep.quadrature_modulus_fit = fit_exponent(quad_ladder);
  rep.leading_modulus_fit = fit_exponent(lead_ladder);
  return rep;
}

nlohmann::json ParallelepipedScan::to_json() const {
  nlohmann::json ax = nlohmann::json::array();
  for (const auto& a : axes) ax.push_back({a[0], a[1], a[2]});
  return {{"lambda", lambda},
          {"nu", nu},
          {"grid_n", grid_n},
          {"center", {center[0], center[1], center[2]}},
          {"axes", ax},
          {"min_scaled_magnitude", min_scaled_magnitude},
          {"phase_lipschitz", phase_lipschitz},
          {"masked", masked}};
}

ParallelepipedScan parallelepiped_scan(const SymbolSpec& spec, const TransformCache& cache,
                                       double nu, int grid_n, int quad_points,
                                       int threads) {
  spec.validate();
  if (spec.dim != 3)
    throw ValidationError("parallelepiped_scan: spherical construction only (dim 3)");
  if (!(nu > 0.0 && nu < 0.2)) throw ValidationError("parallelepiped_scan: nu must be tiny");
  if (grid_n < 4) throw ValidationError("parallelepiped_scan: need at least a 4^3 grid");
  const double lam = spec.lambda;
  const BumpSet& bumps = *spec.bumps;

  // Center direction: first coordinate -nu, remainder along (0,1,0).
  const double root = std::sqrt(1.0 - nu * nu);
  const std::array<double, 3> c_hat = {-nu, root, 0.0};
  const std::array<double, 3> t_hat = {-root, -nu, 0.0};  // tilts x1/|x|
  const std::array<double, 3> z_hat = {0.0, 0.0, 1.0};

  // Radius window centered where the profile argument 2 nu lambda / r hits the
  // plateau center; the box extents keep the argument strictly on the plateau
  // and x1/|x| within (-1.1 nu, -0.9 nu).
  const double plateau_mid =
      0.5 * (bumps.phi_tilde.plateau_lo() + bumps.phi_tilde.plateau_hi());
  const double r_c = 2.0 * nu * lam / plateau_mid;
  if (!(r_c > 0.0) || bumps.phi_tilde(plateau_mid) == 0.0)
    throw CoverageError("parallelepiped_scan: plateau condition selects an empty radius window");

  ParallelepipedScan scan;
  scan.lambda = lam;
  scan.nu = nu;
  scan.grid_n = grid_n;
  scan.center = {r_c * c_hat[0], r_c * c_hat[1], r_c * c_hat[2]};
  const double e1 = 0.30 * r_c, e2 = 0.005 * r_c, e3 = 0.20 * r_c;
  scan.axes = {{{e1 * c_hat[0], e1 * c_hat[1], e1 * c_hat[2]},
                {e2 * t_hat[0], e2 * t_hat[1], e2 * t_hat[2]},
                {e3 * z_hat[0], e3 * z_hat[1], e3 * z_hat[2]}}};

  const auto node_point = [&](int i, int j, int k) {
    std::array<double, 3> x;
    const double u = static_cast<double>(i) / (grid_n - 1) - 0.5;
    const double v = static_cast<double>(j) / (grid_n - 1) - 0.5;
    const double w = static_cast<double>(k) / (grid_n - 1) - 0.5;
    for (int a = 0; a < 3; ++a) {
      const auto s = static_cast<std::size_t>(a);
      x[s] = scan.center[s] + u * scan.axes[0][s] + v * scan.axes[1][s] + w * scan.axes[2][s];
    }
    return x;
  };

  const std::int64_t total = static_cast<std::int64_t>(grid_n) * grid_n * grid_n;
  scan.values.assign(static_cast<std::size_t>(total), {0.0, 0.0});
  parallel_for(
      total,
      [&](std::int64_t idx) {
        const int i = static_cast<int>(idx / (grid_n * grid_n));
        const int j = static_cast<int>((idx / grid_n) % grid_n);
        const int k = static_cast<int>(idx % grid_n);
        scan.values[static_cast<std::size_t>(idx)] =
            oscillatory_integral_d3(spec, cache, node_point(i, j, k), quad_points);
      },
      threads);

  const double scale = std::pow(lam, 1.5);
  const double mask_floor = 1e-3 * std::pow(lam, -1.5);
  double min_scaled = std::numeric_limits<double>::infinity();
  std::vector<double> unwrapped(static_cast<std::size_t>(total), 0.0);
  std::vector<char> ok(static_cast<std::size_t>(total), 1);
  scan.masked = 0;

  const auto at = [&](int i, int j, int k) {
    return static_cast<std::size_t>((static_cast<std::int64_t>(i) * grid_n + j) * grid_n + k);
  };
  const auto wrap = [](double a) {
    return std::remainder(a, kTwoPi);
  };
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j)
      for (int k = 0; k < grid_n; ++k) {
        const std::size_t idx = at(i, j, k);
        const double mag = std::abs(scan.values[idx]);
        min_scaled = std::min(min_scaled, mag * scale);
        if (mag < mask_floor) {
          ok[idx] = 0;
          ++scan.masked;
        }
        const double raw = std::arg(scan.values[idx]);
        double ref;
        if (k > 0)
          ref = unwrapped[at(i, j, k - 1)];
        else if (j > 0)
          ref = unwrapped[at(i, j - 1, 0)];
        else if (i > 0)
          ref = unwrapped[at(i - 1, 0, 0)];
        else
          ref = raw;
        unwrapped[idx] = ref + wrap(raw - ref);
      }
  scan.min_scaled_magnitude = min_scaled;

  double lip = 0.0;
  const double steps[3] = {e1 / (grid_n - 1), e2 / (grid_n - 1), e3 / (grid_n - 1)};
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j)
      for (int k = 0; k < grid_n; ++k) {
        const std::size_t idx = at(i, j, k);
        if (!ok[idx]) continue;
        if (i + 1 < grid_n && ok[at(i + 1, j, k)])
          lip = std::max(lip, std::abs(unwrapped[at(i + 1, j, k)] - unwrapped[idx]) / steps[0]);
        if (j + 1 < grid_n && ok[at(i, j + 1, k)])
          lip = std::max(lip, std::abs(unwrapped[at(i, j + 1, k)] - unwrapped[idx]) / steps[1]);
        if (k + 1 < grid_n && ok[at(i, j, k + 1)])
          lip = std::max(lip, std::abs(unwrapped[at(i, j, k + 1)] - unwrapped[idx]) / steps[2]);
      }
  scan.phase_lipschitz = lip / (kTwoPi * lam);
  return scan;
}

}  // namespace oscillint
