#include "oscillint/symbol.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "oscillint/parallel.hpp"

namespace oscillint {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t next_pow2(std::int64_t n) {
  std::int64_t p = 8;
  while (p < n) p <<= 1;
  return p;
}
}  // namespace

PhaseConvention default_convention(int dim) {
  return dim == 2 ? PhaseConvention::plain : PhaseConvention::two_pi;
}

void SymbolSpec::validate() const {
  if (dim != 2 && dim != 3) throw ValidationError("SymbolSpec: dimension must be 2 or 3");
  if (!std::isfinite(lambda)) throw ValidationError("SymbolSpec: lambda must be finite");
  if (!bumps) throw ValidationError("SymbolSpec: missing bump set");
  if (convention != default_convention(dim))
    throw ValidationError("SymbolSpec: phase convention inconsistent with dimension");
}

double SymbolSpec::phase_scale() const {
  return convention == PhaseConvention::plain ? 1.0 : kTwoPi;
}

nlohmann::json SymbolSpec::to_json() const {
  return {{"dimension", dim},
          {"lambda", lambda},
          {"phase_convention", convention == PhaseConvention::plain ? "plain" : "two_pi"},
          {"bumps", bumps ? bumps->to_json() : nlohmann::json()}};
}

SymbolSpec SymbolSpec::from_json(const nlohmann::json& j) {
  SymbolSpec s;
  s.dim = j.at("dimension").get<int>();
  s.lambda = j.at("lambda").get<double>();
  const std::string conv = j.value("phase_convention", s.dim == 2 ? "plain" : "two_pi");
  if (conv == "plain")
    s.convention = PhaseConvention::plain;
  else if (conv == "two_pi")
    s.convention = PhaseConvention::two_pi;
  else
    throw ValidationError("SymbolSpec: unknown phase convention " + conv);
  s.bumps = j.contains("bumps") && !j.at("bumps").is_null() ? BumpSet::from_json(j.at("bumps"))
                                                            : BumpSet::standard();
  s.validate();
  return s;
}

SymbolSpec make_spec(int dim, double lambda, std::shared_ptr<const BumpSet> bumps) {
  SymbolSpec s;
  s.dim = dim;
  s.lambda = lambda;
  s.convention = default_convention(dim);
  s.bumps = std::move(bumps);
  s.validate();
  return s;
}

std::int64_t required_points(const SymbolSpec& spec, double half_side) {
  // Spacing rule h <= 1/(8 |lambda|): the spatial phase gradient is at most
  // 4 pi |lambda| over the support, so inter-sample increments stay below pi/2.
  const double al = std::max(1.0, std::abs(spec.lambda));
  const auto n = static_cast<std::int64_t>(std::ceil(16.0 * half_side * al));
  return next_pow2(n);
}

GridField symbol_grid_descriptor(const SymbolSpec& spec) {
  const double half_side = 2.0;
  return make_grid(spec.dim, required_points(spec, half_side), half_side, Side::fourier);
}

namespace {

void check_sampling_grid(const SymbolSpec& spec, double half_side, std::int64_t n) {
  spec.validate();
  if (half_side < 2.0)
    throw ValidationError("sample_symbol: box half side must cover the support annulus (>= 2)");
  if (n < required_points(spec, half_side))
    throw CoverageError("sample_symbol: grid too coarse to resolve the symbol phase; need >= " +
                        std::to_string(required_points(spec, half_side)) + " points per axis");
}

}  // namespace

GridField sample_symbol(const SymbolSpec& spec, double half_side, std::int64_t n,
                        int threads) {
  check_sampling_grid(spec, half_side, n);
  GridField out = make_grid(spec.dim, n, half_side, Side::fourier);
  const BumpSet& bumps = *spec.bumps;
  const double scale = spec.phase_scale() * spec.lambda;

  if (spec.dim == 2) {
    parallel_for(
        n,
        [&](std::int64_t j0) {
          const double xi = out.coord(j0);
          for (std::int64_t j1 = 0; j1 < n; ++j1) {
            const double eta = out.coord(j1);
            const double rho = std::hypot(xi, eta);
            const double radial = bumps.phi(rho);
            if (radial == 0.0) continue;
            const double theta = std::atan2(eta, xi);
            const double amp = bumps.chi(theta) * radial / rho;
            if (amp == 0.0) continue;
            out.samples[out.index2(j0, j1)] = std::polar(amp, scale * bumps.phase(theta));
          }
        },
        threads);
    return out;
  }

  parallel_for(
      n,
      [&](std::int64_t j0) {
        const double x0 = out.coord(j0);
        std::array<double, 3> zeta;
        for (std::int64_t j1 = 0; j1 < n; ++j1) {
          const double x1 = out.coord(j1);
          for (std::int64_t j2 = 0; j2 < n; ++j2) {
            const double x2 = out.coord(j2);
            const double rho = std::sqrt(x0 * x0 + x1 * x1 + x2 * x2);
            const double radial = bumps.phi_tilde(rho);
            if (radial == 0.0) continue;
            zeta = {x0 / rho, x1 / rho, x2 / rho};
            const double amp = radial * bumps.cap3(zeta);
            if (amp == 0.0) continue;
            const double phase = scale * (2.0 - 2.0 * zeta[0]);
            out.samples[out.index3(j0, j1, j2)] = std::polar(amp, phase);
          }
        }
      },
      threads);
  return out;
}

GridField sample_homogeneous_symbol(const SymbolSpec& spec, double t,
                                    const SmoothBump& window, double half_side,
                                    std::int64_t n, int threads) {
  if (!(t > 0.0)) throw ValidationError("sample_homogeneous_symbol: scale t must be positive");
  check_sampling_grid(spec, half_side, n);
  GridField out = make_grid(spec.dim, n, half_side, Side::fourier);
  const BumpSet& bumps = *spec.bumps;
  const double scale = spec.phase_scale() * spec.lambda;

  // The direction of t*xi equals the direction of xi for every t > 0, so the
  // samples are computed from xi alone and the output is exactly t-independent.
  if (spec.dim == 2) {
    parallel_for(
        n,
        [&](std::int64_t j0) {
          const double xi = out.coord(j0);
          for (std::int64_t j1 = 0; j1 < n; ++j1) {
            const double eta = out.coord(j1);
            const double amp = window(std::hypot(xi, eta));
            if (amp == 0.0) continue;
            const double theta = std::atan2(eta, xi);
            out.samples[out.index2(j0, j1)] = std::polar(amp, scale * bumps.phase(theta));
          }
        },
        threads);
    return out;
  }

  parallel_for(
      n,
      [&](std::int64_t j0) {
        const double x0 = out.coord(j0);
        for (std::int64_t j1 = 0; j1 < n; ++j1) {
          const double x1 = out.coord(j1);
          for (std::int64_t j2 = 0; j2 < n; ++j2) {
            const double x2 = out.coord(j2);
            const double rho = std::sqrt(x0 * x0 + x1 * x1 + x2 * x2);
            const double amp = window(rho);
            if (amp == 0.0) continue;
            const double phase = scale * (2.0 - 2.0 * x0 / rho);
            out.samples[out.index3(j0, j1, j2)] = std::polar(amp, phase);
          }
        }
      },
      threads);
  return out;
}

}  // namespace oscillint
