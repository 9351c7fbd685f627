#pragma once

#include <span>
#include <vector>

#include "oscillint/grid.hpp"
#include "oscillint/rng.hpp"
#include "oscillint/scaling.hpp"

namespace oscillint {

/// Dyadic annular decomposition of a transform's L2 mass: a_0 is the mass on
/// the unit ball, a_k the mass on the shell 2^(k-1) <= |x| < 2^k.
struct DyadicSpectrum {
  std::vector<double> a;
  int dim = 2;
  /// Measured L2 mass beyond the last complete shell (box corners included);
  /// a stand-in for everything the grid cannot see.
  double truncation_tail = 0.0;

  nlohmann::json to_json() const;
};

/// Bin the transform of a fourier-side field into dyadic shells. The dual
/// range must reach `min_coverage` (8 lambda for the windowed symbols).
DyadicSpectrum dyadic_spectrum(GridField field, double min_coverage, int threads = 0);

struct SpectrumNorms {
  double l2 = 0.0;
  double sobolev = 0.0;  // (sum 2^(2dk) a_k^2)^(1/2)
  double besov = 0.0;    // sum 2^(dk/2) a_k
};

/// The three dyadic norms. Rejects spectra whose truncation tail could move
/// any of them by more than a factor 1e-6 of the largest weighted term.
SpectrumNorms norms_from_spectrum(const DyadicSpectrum& s);

/// besov / sqrt(l2 * sobolev); equals the two-sided sequence ratio below with
/// base A = 2^(d/2), and equals 1 exactly for single-shell spectra.
double interpolation_check(const DyadicSpectrum& s);

struct SequenceCheck {
  double lhs = 0.0;    // sum A^k a_k
  double rhs = 0.0;    // (sum a_k^2)^(1/4) (sum A^(4k) a_k^2)^(1/4)
  double ratio = 0.0;  // lhs / rhs
};

/// Both sides of the weighted-sum inequality for a finite nonnegative
/// sequence and base A > 1.
SequenceCheck sequence_inequality_check(std::span<const double> a, double A);

/// Explicit constant dominating lhs/rhs for every nonnegative sequence:
/// raising the left side to the fourth power, ordering the indices (a factor
/// 24), splitting by arithmetic-geometric mean (12 + 12), and summing the two
/// geometric series gives lhs^4 <= 24 (A/(A-1))^2 rhs^4.
double sequence_inequality_constant(double A);

struct RatioSearchResult {
  double max_ratio = 0.0;
  std::vector<double> argmax;
  std::uint64_t trials = 0;
};

/// Randomized maximization of the sequence ratio: random and structured
/// starts followed by coordinate ascent. Deterministic for a fixed stream.
RatioSearchResult max_ratio_search(double A, std::uint64_t trials, int max_len, Rng rng);

}  // namespace oscillint
