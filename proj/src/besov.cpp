#include "oscillint/besov.hpp"

#include <algorithm>
#include <cmath>

#include "oscillint/parallel.hpp"
#include "oscillint/transform.hpp"

namespace oscillint {

nlohmann::json DyadicSpectrum::to_json() const {
  return {{"a", a}, {"dimension", dim}, {"truncation_tail", truncation_tail}};
}

DyadicSpectrum dyadic_spectrum(GridField field, double min_coverage, int threads) {
  field.validate();
  if (field.side != Side::fourier)
    throw ValidationError("dyadic_spectrum: expected a fourier-side field");
  const GridField hat = kernel_fft(std::move(field), min_coverage);

  const double range = hat.half_side;
  const int shells = static_cast<int>(std::floor(std::log2(range)));
  if (shells < 1 || std::exp2(shells) < min_coverage)
    throw CoverageError("dyadic_spectrum: transform range " + std::to_string(range) +
                        " below the requested coverage " + std::to_string(min_coverage));
  const double top = std::exp2(shells);

  // Shell masses accumulate per thread-slab, then merge in slab order, so the
  // result is independent of the thread count.
  const std::int64_t n = hat.n;
  const std::int64_t rows = hat.dim == 2 ? n : n * n;
  const int t = default_thread_count();
  const std::int64_t slabs = std::min<std::int64_t>(rows, 4 * t);
  std::vector<std::vector<double>> partial(
      static_cast<std::size_t>(slabs),
      std::vector<double>(static_cast<std::size_t>(shells) + 2, 0.0));

  parallel_for(
      slabs,
      [&](std::int64_t slab) {
        auto& bins = partial[static_cast<std::size_t>(slab)];
        const std::int64_t lo = rows * slab / slabs, hi = rows * (slab + 1) / slabs;
        for (std::int64_t row = lo; row < hi; ++row) {
          const std::int64_t i = hat.dim == 2 ? row : row / n;
          const std::int64_t j = hat.dim == 2 ? 0 : row % n;
          const double x0 = hat.coord(i);
          const double x1 = hat.dim == 2 ? 0.0 : hat.coord(j);
          const std::size_t base = static_cast<std::size_t>(row) * static_cast<std::size_t>(n);
          for (std::int64_t k = 0; k < n; ++k) {
            const double xk = hat.coord(k);
            const double r = hat.dim == 2 ? std::hypot(x0, xk)
                                          : std::sqrt(x0 * x0 + x1 * x1 + xk * xk);
            const auto& v = hat.samples[base + static_cast<std::size_t>(k)];
            const double m = v.real() * v.real() + v.imag() * v.imag();
            std::size_t bin;
            if (r < 1.0)
              bin = 0;
            else if (r >= top)
              bin = static_cast<std::size_t>(shells) + 1;  // tail
            else
              bin = static_cast<std::size_t>(std::floor(std::log2(r))) + 1;
            if (bin > static_cast<std::size_t>(shells) + 1)
              bin = static_cast<std::size_t>(shells) + 1;
            bins[bin] += m;
          }
        }
      },
      threads);

  std::vector<double> mass(static_cast<std::size_t>(shells) + 2, 0.0);
  for (const auto& bins : partial)
    for (std::size_t b = 0; b < mass.size(); ++b) mass[b] += bins[b];

  const double cell = hat.cell_volume();
  DyadicSpectrum s;
  s.dim = hat.dim;
  s.a.resize(static_cast<std::size_t>(shells) + 1);
  for (std::size_t k = 0; k <= static_cast<std::size_t>(shells); ++k)
    s.a[k] = std::sqrt(mass[k] * cell);
  s.truncation_tail = std::sqrt(mass[static_cast<std::size_t>(shells) + 1] * cell);
  return s;
}

namespace {
void check_tail(const DyadicSpectrum& s, double weight_log2) {
  // Coverage guard: the unweighted mass beyond the last complete shell must
  // be invisible next to the largest weighted term of the norm.
  double max_term = 0.0;
  for (std::size_t k = 0; k < s.a.size(); ++k)
    max_term = std::max(max_term, std::exp2(weight_log2 * static_cast<double>(k)) * s.a[k]);
  if (max_term > 0.0 && s.truncation_tail > 1e-6 * max_term)
    throw CoverageError("norms_from_spectrum: truncation tail " +
                        std::to_string(s.truncation_tail) +
                        " exceeds 1e-6 of the peak term " + std::to_string(max_term));
}
}  // namespace

SpectrumNorms norms_from_spectrum(const DyadicSpectrum& s) {
  if (s.a.empty()) throw ValidationError("norms_from_spectrum: empty spectrum");
  const double d = static_cast<double>(s.dim);
  check_tail(s, 0.0);
  check_tail(s, d / 2.0);
  check_tail(s, d);
  SpectrumNorms out;
  double l2sq = 0.0, sobsq = 0.0, besov = 0.0;
  for (std::size_t k = 0; k < s.a.size(); ++k) {
    const double kk = static_cast<double>(k);
    l2sq += s.a[k] * s.a[k];
    sobsq += std::exp2(2.0 * d * kk) * s.a[k] * s.a[k];
    besov += std::exp2(d * kk / 2.0) * s.a[k];
  }
  out.l2 = std::sqrt(l2sq);
  out.sobolev = std::sqrt(sobsq);
  out.besov = besov;
  return out;
}

double interpolation_check(const DyadicSpectrum& s) {
  const SpectrumNorms n = norms_from_spectrum(s);
  if (n.l2 == 0.0) throw ValidationError("interpolation_check: zero spectrum");
  return n.besov / std::sqrt(n.l2 * n.sobolev);
}

SequenceCheck sequence_inequality_check(std::span<const double> a, double A) {
  if (!(A > 1.0)) throw ValidationError("sequence_inequality_check: base A must exceed 1");
  if (a.empty()) throw ValidationError("sequence_inequality_check: empty sequence");
  bool any = false;
  SequenceCheck out;
  double s2 = 0.0, s4 = 0.0;
  double w = 1.0;  // A^k
  for (const double v : a) {
    if (v < 0.0) throw ValidationError("sequence_inequality_check: negative entry");
    if (v > 0.0) any = true;
    out.lhs += w * v;
    s2 += v * v;
    const double wv = w * w * w * w;
    s4 += wv * v * v;
    w *= A;
  }
  if (!any) throw ValidationError("sequence_inequality_check: all entries vanish");
  out.rhs = std::pow(s2, 0.25) * std::pow(s4, 0.25);
  out.ratio = out.lhs / out.rhs;
  return out;
}

double sequence_inequality_constant(double A) {
  if (!(A > 1.0)) throw ValidationError("sequence_inequality_constant: base A must exceed 1");
  return std::pow(24.0, 0.25) * std::sqrt(A / (A - 1.0));
}

namespace {

double ratio_of(const std::vector<double>& a, double A) {
  bool any = false;
  for (const double v : a)
    if (v > 0.0) {
      any = true;
      break;
    }
  if (!any) return 0.0;
  return sequence_inequality_check(a, A).ratio;
}

/// One pass of coordinate ascent with multiplicative probes.
double coordinate_ascent(std::vector<double>& a, double A, double ratio) {
  static constexpr double kProbes[] = {0.0, 0.25, 0.5, 0.8, 1.25, 2.0, 4.0};
  for (int sweep = 0; sweep < 24; ++sweep) {
    bool improved = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double base = a[i] > 0.0 ? a[i] : 0.05;
      double best = a[i], best_ratio = ratio;
      for (const double p : kProbes) {
        const double trial = p == 0.0 ? 0.0 : base * p;
        if (trial == a[i]) continue;
        const double keep = a[i];
        a[i] = trial;
        const double rr = ratio_of(a, A);
        a[i] = keep;
        if (rr > best_ratio + 1e-13) {
          best_ratio = rr;
          best = trial;
        }
      }
      if (best != a[i]) {
        a[i] = best;
        ratio = best_ratio;
        improved = true;
      }
    }
    if (!improved) break;
  }
  return ratio;
}

}  // namespace

RatioSearchResult max_ratio_search(double A, std::uint64_t trials, int max_len, Rng rng) {
  if (!(A > 1.0)) throw ValidationError("max_ratio_search: base A must exceed 1");
  if (max_len < 2) throw ValidationError("max_ratio_search: need sequences of length >= 2");
  RatioSearchResult result;
  result.trials = trials;

  // Structured adversaries: geometric ramps matched to the weights, flat
  // runs, and sparse spikes. These seed the ascent alongside random draws.
  std::vector<std::vector<double>> starts;
  for (const double q : {1.0 / A, 1.0 / (A * A), 1.0 / (A * A * A * A), 0.5, 0.9}) {
    std::vector<double> g(static_cast<std::size_t>(max_len));
    double v = 1.0;
    for (auto& x : g) {
      x = v;
      v *= q;
    }
    starts.push_back(std::move(g));
  }
  starts.push_back(std::vector<double>(static_cast<std::size_t>(max_len), 1.0));
  {
    std::vector<double> two(static_cast<std::size_t>(max_len), 0.0);
    two.front() = 1.0;
    two.back() = 1.0 / std::pow(A, max_len - 1);
    starts.push_back(two);
  }

  const auto consider = [&](std::vector<double> a) {
    double r = ratio_of(a, A);
    r = coordinate_ascent(a, A, r);
    if (r > result.max_ratio) {
      result.max_ratio = r;
      result.argmax = a;
    }
  };

  for (auto& s : starts) consider(s);

  const std::uint64_t random_trials = trials > starts.size() ? trials - starts.size() : 0;
  // Ascent is reserved for the most promising random draws; plain evaluation
  // covers the bulk.
  std::uint64_t ascents = 0;
  for (std::uint64_t t = 0; t < random_trials; ++t) {
    const int len = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_len - 1)));
    std::vector<double> a(static_cast<std::size_t>(len));
    const double decay = rng.uniform(0.0, 1.5);
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double envelope = std::pow(A, -decay * static_cast<double>(k));
      a[k] = rng.next_double() < 0.15 ? 0.0 : envelope * rng.next_double();
    }
    const double r = ratio_of(a, A);
    if (r > 0.85 * result.max_ratio && ascents < 64) {
      ++ascents;
      consider(std::move(a));
    } else if (r > result.max_ratio) {
      result.max_ratio = r;
      result.argmax = std::move(a);
    }
  }
  return result;
}

}  // namespace oscillint
