#pragma once

#include <memory>

#include "oscillint/bumps.hpp"
#include "oscillint/grid.hpp"

namespace oscillint {

/// Which exponential the symbol carries: e^{i lambda phase} (the planar
/// construction, whose periodic phase already contains its own 2*pi) or
/// e^{2*pi*i lambda phase} (the spherical construction).
enum class PhaseConvention : std::uint32_t { plain = 0, two_pi = 1 };

PhaseConvention default_convention(int dim);

/// Full parameterization of the oscillating multiplier symbol.
struct SymbolSpec {
  int dim = 2;
  double lambda = 1.0;
  PhaseConvention convention = PhaseConvention::plain;
  std::shared_ptr<const BumpSet> bumps;

  void validate() const;
  /// 1 for the plain convention, 2*pi otherwise.
  double phase_scale() const;

  nlohmann::json to_json() const;
  static SymbolSpec from_json(const nlohmann::json& j);
};

SymbolSpec make_spec(int dim, double lambda, std::shared_ptr<const BumpSet> bumps);

/// Minimum points per axis resolving the symbol phase on a box of the given
/// half side: grid spacing at most 1/(8 lambda), so adjacent nonzero samples
/// differ in phase by well under pi.
std::int64_t required_points(const SymbolSpec& spec, double half_side);

/// Default sampling box: half side 2 (covers the support annulus with room),
/// points per axis the resolution rule rounded up to a power of two.
GridField symbol_grid_descriptor(const SymbolSpec& spec);

/// Sample the multiplier symbol on a fourier-side grid. Rejects boxes that do
/// not cover the support annulus and grids too coarse to resolve the phase.
GridField sample_symbol(const SymbolSpec& spec, double half_side, std::int64_t n,
                        int threads = 0);

/// Sample window(|xi|) * e^{i c lambda phase(xi/|xi|)}. The symbol factor is
/// homogeneous of order zero, so the scale parameter t > 0 cancels exactly
/// and the output is identical for every admissible t.
GridField sample_homogeneous_symbol(const SymbolSpec& spec, double t,
                                    const SmoothBump& window, double half_side,
                                    std::int64_t n, int threads = 0);

}  // namespace oscillint
