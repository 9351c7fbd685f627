#include "oscillint/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "oscillint/asymptotics.hpp"
#include "oscillint/besov.hpp"
#include "oscillint/opnorm.hpp"
#include "oscillint/parallel.hpp"
#include "oscillint/quadrature.hpp"
#include "oscillint/rng.hpp"
#include "oscillint/sha256.hpp"
#include "oscillint/svg.hpp"
#include "oscillint/transform.hpp"
#include "oscillint/version.hpp"

namespace oscillint {

namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Acceptance thresholds. These mirror the project checklist and are fixed
// here rather than in the config.
// ---------------------------------------------------------------------------
const std::vector<double> kAccLemma1Ladder = {16, 32, 64, 128};
constexpr int kAccLemma1Grid = 64;
constexpr double kAccLemma1Monotone = 1e-4;
constexpr double kAccLemma1Bound = 0.1;

const std::vector<double> kAccKernelLadder = {16, 32, 64};
constexpr int kAccKernelPoints = 100;
constexpr double kAccKernelRel = 1e-3;

const std::vector<double> kAccOpnormLadder = {16, 32, 64, 128};
constexpr double kAccSlopeWindow = 0.15;
constexpr double kAccR2 = 0.98;

const std::vector<double> kAccStatphaseLadder = {8, 16, 32, 64};
constexpr double kAccErrFactorLo = 0.3;
constexpr double kAccErrFactorHi = 0.8;
constexpr double kAccStatSlopeWindow = 0.1;

const std::vector<double> kAccBoxLadder = {8, 16};
constexpr double kAccBoxFactor = 2.0;
constexpr double kAccPhaseLipschitz = 100.0 + 1.0;  // stated bound plus grid slack

const std::vector<double> kAccBesovLadder = {16, 32, 64, 128};
constexpr double kAccBesovRatioSpread = 2.0;

constexpr double kAccEqualityTol = 1e-12;
const std::vector<double> kAccSeqA = {std::numbers::sqrt2, 2.0, 2.0 * std::numbers::sqrt2, 4.0};
constexpr std::uint64_t kAccSeqTrials = 100000;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::int64_t next_pow2(std::int64_t n) {
  std::int64_t p = 8;
  while (p < n) p <<= 1;
  return p;
}

// ---------------------------------------------------------------------------
// Run context: output directory, artifact registry, shared caches.
// ---------------------------------------------------------------------------
struct Ctx {
  const Config& cfg;
  std::shared_ptr<const BumpSet> bumps;
  std::shared_ptr<TransformCache> cache_ptr;
  TransformCache& cache;
  fs::path outdir;
  std::vector<std::string> artifacts;

  Ctx(const Config& c, const fs::path& dir, std::shared_ptr<TransformCache> shared = nullptr)
      : cfg(c),
        bumps(shared ? shared->bumps_ptr() : c.make_bumps()),
        cache_ptr(shared ? std::move(shared) : std::make_shared<TransformCache>(bumps)),
        cache(*cache_ptr),
        outdir(dir) {
    fs::create_directories(outdir);
  }

  void note(const std::string& rel) { artifacts.push_back(rel); }

  void write_text(const std::string& rel, const std::string& body) {
    std::ofstream os(outdir / rel, std::ios::binary);
    if (!os) throw ValidationError("cannot write " + (outdir / rel).string());
    os << body;
    note(rel);
  }

  void write_json(const std::string& rel, const nlohmann::json& j) {
    write_text(rel, j.dump(2) + "\n");
  }

  void write_csv(const std::string& rel, const std::string& header,
                 const std::vector<std::vector<double>>& rows) {
    std::string body = header + "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) body += ",";
        body += fmt(row[i]);
      }
      body += "\n";
    }
    write_text(rel, body);
  }

  SymbolSpec spec2(double lambda) const { return make_spec(2, lambda, bumps); }
  SymbolSpec spec3(double lambda) const { return make_spec(3, lambda, bumps); }

  GridField sampled_symbol(double lambda) const {
    const SymbolSpec spec = spec2(lambda);
    const double L = cfg.box_half_side;
    return sample_symbol(spec, L, required_points(spec, L), cfg.threads);
  }
};

std::string lambda_tag(double lambda) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", lambda);
  return buf;
}

// ---------------------------------------------------------------------------
// symbol: dump sampled symbols for the kernel ladder.
// ---------------------------------------------------------------------------
nlohmann::json run_symbol(Ctx& ctx) {
  nlohmann::json rows = nlohmann::json::array();
  for (const double lam : ctx.cfg.kernel_ladder) {
    const GridField field = ctx.sampled_symbol(lam);
    const std::string tag = lambda_tag(lam);
    save_grid(field, ctx.outdir / ("symbol_" + tag + ".bin"));
    ctx.note("symbol_" + tag + ".bin");
    nlohmann::json sidecar = ctx.spec2(lam).to_json();
    sidecar["grid"] = {{"points_per_axis", field.n},
                       {"box_half_side", field.half_side},
                       {"side", "fourier"}};
    save_sidecar(sidecar, ctx.outdir / ("symbol_" + tag + ".json"));
    ctx.note("symbol_" + tag + ".json");
    rows.push_back({{"lambda", lam}, {"points_per_axis", field.n}});
  }
  return {{"symbols", rows}};
}

// ---------------------------------------------------------------------------
// kernel: FFT route vs reduced route at random sector nodes.
// ---------------------------------------------------------------------------
nlohmann::json run_kernel(Ctx& ctx, bool write_fields) {
  nlohmann::json rows = nlohmann::json::array();
  for (const double lam : ctx.cfg.kernel_ladder) {
    const SymbolSpec spec = ctx.spec2(lam);
    const GridField kernel = kernel_fft(ctx.sampled_symbol(lam), 2.0 * lam);
    const Kernel1dReduction reduce(spec, ctx.cache);
    const std::string tag = lambda_tag(lam);

    Rng rng = Rng(ctx.cfg.seed).stream("kernel").stream(tag);
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    std::vector<std::array<double, 2>> nodes;
    int guard = 0;
    while (static_cast<int>(nodes.size()) < ctx.cfg.kernel_points && guard++ < 100000) {
      const double r = rng.uniform(0.8 * lam, 1.25 * lam);
      const double t = rng.uniform(-0.1, 0.1);
      const std::int64_t i = kernel.nearest_index(r * std::sin(t));
      const std::int64_t j = kernel.nearest_index(r * std::cos(t));
      const double x = kernel.coord(i), y = kernel.coord(j);
      const double rr = std::hypot(x, y);
      if (rr < 0.8 * lam || rr > 1.25 * lam) continue;
      if (std::abs(std::atan2(x, y)) > 0.1) continue;
      if (!seen.emplace(i, j).second) continue;
      nodes.push_back({x, y});
    }
    if (static_cast<int>(nodes.size()) < ctx.cfg.kernel_points)
      throw CoverageError("kernel: could not place the requested sample nodes in the sector");

    std::vector<std::complex<double>> red(nodes.size());
    parallel_for(
        static_cast<std::int64_t>(nodes.size()),
        [&](std::int64_t q) {
          const auto s = static_cast<std::size_t>(q);
          red[s] = reduce(nodes[s][0], nodes[s][1]);
        },
        ctx.cfg.threads);

    double max_rel = 0.0, sum_rel = 0.0;
    std::vector<std::vector<double>> point_rows, diff_rows;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const auto [x, y] = nodes[q];
      const std::complex<double> kf =
          kernel.samples[kernel.index2(kernel.nearest_index(x), kernel.nearest_index(y))];
      const double rel = std::abs(kf - red[q]) / std::abs(red[q]);
      max_rel = std::max(max_rel, rel);
      sum_rel += rel;
      point_rows.push_back({x, y, red[q].real(), red[q].imag(), std::abs(red[q])});
      diff_rows.push_back({x, y, kf.real(), kf.imag(), red[q].real(), red[q].imag(), rel});
    }
    ctx.write_csv("kernel_points_" + tag + ".csv", "x,y,re_k,im_k,abs_k", point_rows);
    ctx.write_csv("kernel_crossdiff_" + tag + ".csv",
                  "x,y,re_fft,im_fft,re_reduction,im_reduction,rel_diff", diff_rows);
    if (write_fields) {
      save_grid(kernel, ctx.outdir / ("kernel_" + tag + ".bin"));
      ctx.note("kernel_" + tag + ".bin");
    }
    rows.push_back({{"lambda", lam},
                    {"n_points", nodes.size()},
                    {"max_rel_diff", max_rel},
                    {"mean_rel_diff", sum_rel / static_cast<double>(nodes.size())}});
  }
  return {{"cross_oracle", rows}};
}

// ---------------------------------------------------------------------------
// lemma1: discrepancy scans over the admissible (r, theta) region.
// ---------------------------------------------------------------------------
nlohmann::json run_lemma1(Ctx& ctx) {
  nlohmann::json rows = nlohmann::json::array();
  double lambda_star = -1.0;
  bool decreasing = true;
  double prev = 0.0, top_sup = 0.0;
  bool first = true;
  for (const double lam : ctx.cfg.lemma1_ladder) {
    const RegionScan scan = leading_term_scan(ctx.spec2(lam), ctx.cache, ctx.cfg.lemma1_n_r,
                                              ctx.cfg.lemma1_n_theta, ctx.cfg.threads);
    const std::string tag = lambda_tag(lam);
    std::vector<std::vector<double>> csv_rows;
    for (int ir = 0; ir < scan.n_r; ++ir)
      for (int it = 0; it < scan.n_theta; ++it) {
        const double r = scan.r_lo + (scan.r_hi - scan.r_lo) * ir / (scan.n_r - 1);
        const double t =
            scan.theta_lo + (scan.theta_hi - scan.theta_lo) * it / (scan.n_theta - 1);
        csv_rows.push_back(
            {r, t, scan.table[static_cast<std::size_t>(ir) * scan.n_theta + it]});
      }
    ctx.write_csv("lemma1_scan_" + tag + ".csv", "r,theta,discrepancy", csv_rows);
    ctx.write_text("lemma1_heatmap_" + tag + ".svg",
                   svg_heatmap(scan.table, scan.n_r, scan.n_theta, scan.theta_lo,
                               scan.theta_hi, scan.r_lo / lam, scan.r_hi / lam,
                               "discrepancy, lambda=" + tag, "theta_xy", "r/lambda"));
    if (!first && scan.sup - prev >= kAccLemma1Monotone) decreasing = false;
    prev = scan.sup;
    top_sup = scan.sup;
    first = false;
    if (lambda_star < 0.0 && scan.sup < kAccLemma1Bound) lambda_star = lam;
    rows.push_back(scan.to_json());
  }
  return {{"rows", rows},
          {"lambda_star", lambda_star},
          {"strictly_decreasing", decreasing},
          {"sup_at_top", top_sup}};
}

// ---------------------------------------------------------------------------
// statphase: transverse integral vs the stationary-phase leading term.
// ---------------------------------------------------------------------------
nlohmann::json run_statphase(Ctx& ctx) {
  const double nu = ctx.cfg.statphase_nu;
  const std::array<double, 3> dir = {-nu, std::sqrt(1.0 - nu * nu), 0.0};
  const double plateau_mid =
      0.5 * (ctx.bumps->phi_tilde.plateau_lo() + ctx.bumps->phi_tilde.plateau_hi());
  const double ratio = 2.0 * nu / plateau_mid;
  const StatPhaseReport rep =
      verify_statphase(dir, ratio, ctx.cfg.statphase_ladder, ctx.bumps, ctx.cache);

  std::vector<std::vector<double>> csv_rows;
  std::vector<std::pair<double, double>> points;
  for (const auto& row : rep.rows) {
    csv_rows.push_back(
        {row.lambda, std::abs(row.quadrature), std::abs(row.leading), row.rel_err});
    points.emplace_back(row.lambda, std::abs(row.quadrature));
  }
  ctx.write_csv("statphase.csv", "lambda,abs_quadrature,abs_leading,rel_err", csv_rows);
  ctx.write_text("statphase.svg",
                 svg_loglog_plot(points, rep.quadrature_modulus_fit.slope,
                                 rep.quadrature_modulus_fit.intercept, -0.5,
                                 "transverse integral modulus", "log lambda", "log |I|"));
  ctx.write_json("statphase_report.json", rep.to_json());
  return rep.to_json();
}

// ---------------------------------------------------------------------------
// opnorm: test-function lower bounds and exponent fits.
// ---------------------------------------------------------------------------
nlohmann::json run_opnorm(Ctx& ctx) {
  std::vector<double> ps = ctx.cfg.opnorm_p;
  double dual_p = 0.0, dual_conj = 0.0;
  for (const double p : ps)
    if (p > 1.0 && p < 2.0) {
      dual_p = p;
      dual_conj = p / (p - 1.0);
      break;
    }
  if (dual_conj > 0.0 &&
      std::find(ps.begin(), ps.end(), dual_conj) == ps.end())
    ps.push_back(dual_conj);

  std::map<double, std::vector<std::pair<double, double>>> ladders;
  std::vector<std::pair<double, double>> l1_ladder;
  nlohmann::json rows = nlohmann::json::array();
  for (const double lam : ctx.cfg.opnorm_ladder) {
    const GridField symbol = ctx.sampled_symbol(lam);
    double l1 = 0.0, sector_l1_val = 0.0;
    {
      const GridField kernel = kernel_fft(symbol, 2.0 * lam);
      l1 = kernel_l1_norm(kernel, 2.0 * lam);
      sector_l1_val = sector_l1_norm(kernel, lam);
    }
    const GridField conv = ball_convolution(symbol, ctx.cfg.ball_radius, 2.0 * lam,
                                            ctx.cfg.threads);
    const double sector_min_scaled = sector_min_abs(conv, lam) * lam;
    nlohmann::json row = {{"lambda", lam},
                          {"kernel_l1", l1},
                          {"sector_l1", sector_l1_val},
                          {"conv_sector_min_times_lambda", sector_min_scaled}};
    nlohmann::json bounds = nlohmann::json::array();
    for (const double p : ps) {
      const double lb =
          lp_lower_bound_from_convolution(conv, p, symbol.dim, ctx.cfg.ball_radius);
      ladders[p].emplace_back(lam, lb);
      bounds.push_back({{"p", p}, {"lower_bound", lb}});
    }
    row["lp_lower_bounds"] = bounds;
    rows.push_back(row);
    l1_ladder.emplace_back(lam, l1);
  }

  nlohmann::json fits = nlohmann::json::array();
  for (const double p : ps) {
    const ScalingReport fit = fit_exponent(ladders[p]);
    const double reference = std::abs(2.0 / p - 1.0);
    nlohmann::json jf = fit.to_json();
    jf["p"] = p;
    jf["reference_slope"] = reference;
    fits.push_back(jf);
    const std::string tag = fmt_short(p);
    std::vector<std::vector<double>> csv_rows;
    for (const auto& [lam, v] : ladders[p]) csv_rows.push_back({std::log(lam), std::log(v)});
    ctx.write_csv("opnorm_p" + tag + ".csv", "log_lambda,log_value", csv_rows);
    ctx.write_text("opnorm_p" + tag + ".svg",
                   svg_loglog_plot(ladders[p], fit.slope, fit.intercept, reference,
                                   "operator norm lower bound, p=" + tag, "log lambda",
                                   "log bound"));
  }
  const ScalingReport l1_fit = fit_exponent(l1_ladder);

  nlohmann::json duality = nlohmann::json();
  if (dual_conj > 0.0) {
    const double s1 = std::abs(fit_exponent(ladders[dual_p]).slope);
    const double s2 = std::abs(fit_exponent(ladders[dual_conj]).slope);
    duality = {{"p", dual_p},
               {"p_conjugate", dual_conj},
               {"abs_slope_p", s1},
               {"abs_slope_conjugate", s2},
               {"rel_gap", std::abs(s1 - s2) / std::max(s1, s2)}};
  }

  nlohmann::json report = {{"rows", rows},
                           {"p_fits", fits},
                           {"kernel_l1_fit", l1_fit.to_json()},
                           {"duality", duality}};
  ctx.write_json("opnorm_report.json", report);
  return report;
}

// ---------------------------------------------------------------------------
// besov: dyadic-spectrum norms, scaling fit, interpolation ratios.
// ---------------------------------------------------------------------------
nlohmann::json run_besov(Ctx& ctx) {
  const double L = ctx.cfg.box_half_side;
  const double cov = ctx.cfg.besov_coverage_factor;
  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::pair<double, double>> ladder;
  std::vector<double> ratios, interp_ratios;
  for (const double lam : ctx.cfg.besov_ladder) {
    const SymbolSpec spec = ctx.spec2(lam);
    const std::int64_t n =
        next_pow2(std::max<std::int64_t>(required_points(spec, L),
                                         static_cast<std::int64_t>(std::ceil(4.0 * L * cov * lam))));
    GridField g = sample_homogeneous_symbol(spec, 1.0, ctx.bumps->phi, L, n, ctx.cfg.threads);
    const DyadicSpectrum s = dyadic_spectrum(std::move(g), cov * lam, ctx.cfg.threads);
    const SpectrumNorms norms = norms_from_spectrum(s);
    const double ratio = norms.besov / std::pow(lam, spec.dim / 2.0);
    const double interp = interpolation_check(s);
    ladder.emplace_back(lam, norms.besov);
    ratios.push_back(ratio);
    interp_ratios.push_back(interp);
    const std::string tag = lambda_tag(lam);
    std::vector<std::vector<double>> csv_rows;
    for (std::size_t k = 0; k < s.a.size(); ++k)
      csv_rows.push_back({static_cast<double>(k), s.a[k]});
    ctx.write_csv("besov_spectrum_" + tag + ".csv", "k,a_k", csv_rows);
    rows.push_back({{"lambda", lam},
                    {"l2", norms.l2},
                    {"sobolev", norms.sobolev},
                    {"besov", norms.besov},
                    {"ratio_to_power", ratio},
                    {"interpolation_ratio", interp},
                    {"truncation_tail", s.truncation_tail},
                    {"shells", s.a.size()}});
  }
  const ScalingReport fit = fit_exponent(ladder);
  ctx.write_text("besov.svg",
                 svg_loglog_plot(ladder, fit.slope, fit.intercept, 1.0,
                                 "windowed symbol besov norm", "log lambda", "log norm"));

  // Dilation invariance at the smallest ladder point: the windowed symbol is
  // homogeneous of order zero, so every scale yields the same samples.
  double max_dev = 0.0;
  {
    const double lam = ctx.cfg.besov_ladder.front();
    const SymbolSpec spec = ctx.spec2(lam);
    const std::int64_t n =
        next_pow2(std::max<std::int64_t>(required_points(spec, L),
                                         static_cast<std::int64_t>(std::ceil(4.0 * L * cov * lam))));
    double base = 0.0;
    bool have_base = false;
    for (const double t : ctx.cfg.dilation_t_ladder) {
      GridField g =
          sample_homogeneous_symbol(spec, t, ctx.bumps->phi, L, n, ctx.cfg.threads);
      const double b = norms_from_spectrum(dyadic_spectrum(std::move(g), cov * lam,
                                                           ctx.cfg.threads))
                           .besov;
      if (!have_base) {
        base = b;
        have_base = true;
      }
      max_dev = std::max(max_dev, std::abs(b - base));
    }
  }

  // Randomized interpolation-ratio sweep against the traced constant.
  const double A = std::exp2(1.0);  // 2^{d/2}, d = 2
  const double constant = sequence_inequality_constant(A);
  Rng rng = Rng(ctx.cfg.seed).stream("interp");
  double max_random_ratio = 0.0;
  for (int t = 0; t < ctx.cfg.interp_random_spectra; ++t) {
    DyadicSpectrum s;
    s.dim = 2;
    const int len = 2 + static_cast<int>(rng.next_below(
                            static_cast<std::uint64_t>(ctx.cfg.interp_max_len - 1)));
    s.a.resize(static_cast<std::size_t>(len));
    bool any = false;
    for (auto& v : s.a) {
      v = rng.next_double() < 0.2 ? 0.0 : rng.next_double();
      any = any || v > 0.0;
    }
    if (!any) s.a[0] = 1.0;
    max_random_ratio = std::max(max_random_ratio, interpolation_check(s));
  }

  // Single-shell equality cases.
  double max_equality_dev = 0.0;
  for (int k = 0; k <= 20; ++k) {
    DyadicSpectrum s;
    s.dim = 2;
    s.a.assign(static_cast<std::size_t>(k) + 1, 0.0);
    s.a.back() = 0.75;
    max_equality_dev = std::max(max_equality_dev, std::abs(interpolation_check(s) - 1.0));
  }

  double ratio_spread = 0.0;
  if (!ratios.empty()) {
    const auto [mn, mx] = std::minmax_element(ratios.begin(), ratios.end());
    ratio_spread = *mx / *mn;
  }
  double max_ladder_interp = 0.0;
  for (const double v : interp_ratios) max_ladder_interp = std::max(max_ladder_interp, v);

  nlohmann::json report = {{"rows", rows},
                           {"fit", fit.to_json()},
                           {"ratio_spread", ratio_spread},
                           {"dilation_max_deviation", max_dev},
                           {"interp_constant", constant},
                           {"interp_max_random_ratio", max_random_ratio},
                           {"interp_max_ladder_ratio", max_ladder_interp},
                           {"interp_max_equality_deviation", max_equality_dev}};
  ctx.write_json("besov_report.json", report);
  return report;
}

// ---------------------------------------------------------------------------
// seq-ineq: traced constant vs randomized maximization.
// ---------------------------------------------------------------------------
nlohmann::json run_seqineq(Ctx& ctx) {
  nlohmann::json rows = nlohmann::json::array();
  for (const double A : ctx.cfg.seq_A) {
    const double constant = sequence_inequality_constant(A);
    const RatioSearchResult search = max_ratio_search(
        A, ctx.cfg.seq_trials, ctx.cfg.seq_max_len,
        Rng(ctx.cfg.seed).stream("seq-ineq").stream(fmt_short(A)));
    std::vector<double> spike(11, 0.0);
    spike[10] = 1.0;
    const double spike_dev =
        std::abs(sequence_inequality_check(spike, A).ratio - 1.0);
    rows.push_back({{"A", A},
                    {"constant", constant},
                    {"empirical_max_ratio", search.max_ratio},
                    {"dominated", search.max_ratio <= constant},
                    {"single_spike_deviation", spike_dev},
                    {"trials", search.trials}});
  }
  nlohmann::json report = {{"rows", rows}};
  ctx.write_json("seqineq_report.json", report);
  return report;
}

// ---------------------------------------------------------------------------
// parallelepiped scans (used by `all`; exposed through statphase artifacts).
// ---------------------------------------------------------------------------
nlohmann::json run_parallelepiped(Ctx& ctx) {
  nlohmann::json rows = nlohmann::json::array();
  for (const double lam : ctx.cfg.parallelepiped_ladder) {
    const ParallelepipedScan scan =
        parallelepiped_scan(ctx.spec3(lam), ctx.cache, ctx.cfg.parallelepiped_nu,
                            ctx.cfg.parallelepiped_grid_n, ctx.cfg.quad_points_d3,
                            ctx.cfg.threads);
    rows.push_back(scan.to_json());
  }
  nlohmann::json report = {{"rows", rows}};
  ctx.write_json("parallelepiped_report.json", report);
  return report;
}

Config reduced_config(const Config& base) {
  Config c = base;
  c.lemma1_ladder = {8, 16};
  c.lemma1_n_r = 16;
  c.lemma1_n_theta = 16;
  c.kernel_ladder = {8, 16};
  c.kernel_points = 20;
  c.opnorm_ladder = {8, 16, 32};
  c.opnorm_p = {1.0, 4.0 / 3.0};
  c.statphase_ladder = {8, 16, 32};
  c.parallelepiped_ladder = {8};
  c.parallelepiped_grid_n = 5;
  c.quad_points_d3 = 48;
  c.besov_ladder = {8, 16, 32};
  c.dilation_t_ladder = {0.5, 1.0, 2.0};
  c.seq_trials = 2000;
  c.interp_random_spectra = 100;
  return c;
}

void run_pipeline(Ctx& ctx) {
  run_symbol(ctx);
  ctx.write_json("kernel_report.json", run_kernel(ctx, false));
  ctx.write_json("lemma1_report.json", run_lemma1(ctx));
  run_statphase(ctx);
  run_opnorm(ctx);
  run_besov(ctx);
  run_seqineq(ctx);
  run_parallelepiped(ctx);
}

std::string file_bytes(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Byte-compare every .json/.csv artifact of two runs.
nlohmann::json compare_runs(const fs::path& a, const fs::path& b) {
  std::vector<std::string> mismatches;
  std::size_t compared = 0;
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file()) {
      const auto ext = e.path().extension().string();
      if (ext == ".json" || ext == ".csv") files.push_back(e.path());
    }
  std::sort(files.begin(), files.end());
  for (const auto& fa : files) {
    const fs::path rel = fs::relative(fa, a);
    const fs::path fb = b / rel;
    ++compared;
    if (!fs::exists(fb) || file_bytes(fa) != file_bytes(fb))
      mismatches.push_back(rel.string());
  }
  return {{"files_compared", compared}, {"mismatches", mismatches}};
}

struct Criterion {
  int id;
  std::string name;
  bool pass;
  nlohmann::json measured;
};

nlohmann::json run_all(Ctx& ctx) {
  std::vector<Criterion> criteria;
  const auto add = [&](int id, const std::string& name, bool pass, nlohmann::json m) {
    criteria.push_back({id, name, pass, std::move(m)});
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << " (" << name
              << "): " << m.dump() << "\n";
  };

  Config pinned = ctx.cfg;
  pinned.lemma1_ladder = kAccLemma1Ladder;
  pinned.lemma1_n_r = kAccLemma1Grid;
  pinned.lemma1_n_theta = kAccLemma1Grid;
  pinned.kernel_ladder = kAccKernelLadder;
  pinned.kernel_points = kAccKernelPoints;
  pinned.opnorm_ladder = kAccOpnormLadder;
  pinned.opnorm_p = {1.0, 4.0 / 3.0, 2.0};
  pinned.statphase_ladder = kAccStatphaseLadder;
  pinned.parallelepiped_ladder = kAccBoxLadder;
  pinned.besov_ladder = kAccBesovLadder;
  pinned.seq_A = kAccSeqA;
  pinned.seq_trials = kAccSeqTrials;
  pinned.interp_random_spectra = 1000;
  Ctx actx(pinned, ctx.outdir, ctx.cache_ptr);

  // 1. leading-term discrepancy ladder.
  {
    const nlohmann::json rep = run_lemma1(actx);
    actx.write_json("lemma1_report.json", rep);
    const bool pass = rep.at("strictly_decreasing").get<bool>() &&
                      rep.at("sup_at_top").get<double>() < kAccLemma1Bound;
    add(1, "leading-term discrepancy ladder", pass,
        {{"strictly_decreasing", rep.at("strictly_decreasing")},
         {"sup_at_top", rep.at("sup_at_top")},
         {"bound", kAccLemma1Bound}});
  }

  // 2. kernel cross-oracle agreement.
  {
    const nlohmann::json rep = run_kernel(actx, false);
    actx.write_json("kernel_report.json", rep);
    double worst = 0.0;
    for (const auto& row : rep.at("cross_oracle"))
      worst = std::max(worst, row.at("max_rel_diff").get<double>());
    add(2, "kernel cross-oracle agreement", worst <= kAccKernelRel,
        {{"max_rel_diff", worst}, {"tolerance", kAccKernelRel}});
  }

  // 3. operator-norm exponents.
  {
    const nlohmann::json rep = run_opnorm(actx);
    bool pass = true;
    nlohmann::json measured = nlohmann::json::array();
    for (const auto& fit : rep.at("p_fits")) {
      const double p = fit.at("p").get<double>();
      if (p != 1.0 && std::abs(p - 4.0 / 3.0) > 1e-9) continue;
      const double slope = fit.at("slope").get<double>();
      const double ref = fit.at("reference_slope").get<double>();
      const double r2 = fit.at("r_squared").get<double>();
      const bool ok = std::abs(slope - ref) <= kAccSlopeWindow && r2 >= kAccR2;
      pass = pass && ok;
      measured.push_back({{"p", p}, {"slope", slope}, {"reference", ref}, {"r2", r2}});
    }
    add(3, "lp lower-bound exponents", pass, measured);
  }

  // 4. stationary phase.
  {
    const nlohmann::json rep = run_statphase(actx);
    const auto factors = rep.at("error_factors").get<std::vector<double>>();
    const double f01 = factors.empty() ? 0.0 : factors.front();
    const double lead_slope = rep.at("leading_modulus_fit").at("slope").get<double>();
    const double quad_slope = rep.at("quadrature_modulus_fit").at("slope").get<double>();
    const bool pass = f01 >= kAccErrFactorLo && f01 <= kAccErrFactorHi &&
                      std::abs(lead_slope + 0.5) <= kAccStatSlopeWindow &&
                      std::abs(quad_slope + 0.5) <= kAccStatSlopeWindow;
    add(4, "stationary-phase leading term", pass,
        {{"error_factor_8_to_16", f01},
         {"leading_slope", lead_slope},
         {"quadrature_slope", quad_slope}});
  }

  // 5. parallelepiped magnitude and phase.
  {
    const nlohmann::json rep = run_parallelepiped(actx);
    std::vector<double> mins, lips;
    for (const auto& row : rep.at("rows")) {
      mins.push_back(row.at("min_scaled_magnitude").get<double>());
      lips.push_back(row.at("phase_lipschitz").get<double>());
    }
    const double ratio = mins.size() >= 2 ? std::max(mins[0] / mins[1], mins[1] / mins[0])
                                          : 1e9;
    bool lip_ok = true;
    for (const double l : lips) lip_ok = lip_ok && l <= kAccPhaseLipschitz;
    const bool pass = ratio <= kAccBoxFactor && lip_ok;
    add(5, "parallelepiped magnitude", pass,
        {{"min_scaled", mins}, {"ratio", ratio}, {"phase_lipschitz", lips}});
  }

  // 6 & 7. besov scaling and interpolation.
  {
    const nlohmann::json rep = run_besov(actx);
    const double slope = rep.at("fit").at("slope").get<double>();
    const double spread = rep.at("ratio_spread").get<double>();
    const bool pass6 =
        std::abs(slope - 1.0) <= kAccSlopeWindow && spread <= kAccBesovRatioSpread;
    add(6, "besov norm scaling", pass6, {{"slope", slope}, {"ratio_spread", spread}});

    const double constant = rep.at("interp_constant").get<double>();
    const bool pass7 =
        rep.at("interp_max_random_ratio").get<double>() <= constant &&
        rep.at("interp_max_ladder_ratio").get<double>() <= constant &&
        rep.at("interp_max_equality_deviation").get<double>() <= kAccEqualityTol;
    add(7, "interpolation inequality", pass7,
        {{"constant", constant},
         {"max_random_ratio", rep.at("interp_max_random_ratio")},
         {"max_ladder_ratio", rep.at("interp_max_ladder_ratio")},
         {"max_equality_deviation", rep.at("interp_max_equality_deviation")}});
  }

  // 8. sequence inequality.
  {
    const nlohmann::json rep = run_seqineq(actx);
    bool pass = true;
    nlohmann::json measured = nlohmann::json::array();
    for (const auto& row : rep.at("rows")) {
      const bool ok = row.at("dominated").get<bool>() &&
                      row.at("single_spike_deviation").get<double>() <= kAccEqualityTol;
      pass = pass && ok;
      measured.push_back(row);
    }
    add(8, "sequence inequality constant", pass, measured);
  }

  // 9. determinism of the full pipeline.
  {
    const Config det = reduced_config(ctx.cfg);
    Ctx run_a(det, ctx.outdir / "det_a", ctx.cache_ptr);
    run_pipeline(run_a);
    Ctx run_b(det, ctx.outdir / "det_b", ctx.cache_ptr);
    run_pipeline(run_b);
    const nlohmann::json cmp = compare_runs(run_a.outdir, run_b.outdir);
    for (const auto& rel : run_a.artifacts) actx.note((fs::path("det_a") / rel).string());
    for (const auto& rel : run_b.artifacts) actx.note((fs::path("det_b") / rel).string());
    const bool pass = cmp.at("mismatches").empty() && cmp.at("files_compared").get<std::size_t>() > 0;
    add(9, "byte-identical reruns", pass, cmp);
  }

  nlohmann::json out = nlohmann::json::array();
  bool all_pass = true;
  for (const auto& c : criteria) {
    all_pass = all_pass && c.pass;
    out.push_back(
        {{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"measured", c.measured}});
  }
  nlohmann::json report = {{"criteria", out}, {"all_pass", all_pass}};
  actx.write_json("acceptance.json", report);
  ctx.artifacts = actx.artifacts;
  return report;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "symbol", "kernel", "lemma1", "statphase", "opnorm", "besov", "seq-ineq", "all"};
  return names;
}

RunResult run_command(const std::string& command, const Config& config,
                      const fs::path& output_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  Ctx ctx(config, output_dir);
  RunResult result;

  if (command == "symbol")
    result.summary = run_symbol(ctx);
  else if (command == "kernel") {
    result.summary = run_kernel(ctx, true);
    ctx.write_json("kernel_report.json", result.summary);
  } else if (command == "lemma1") {
    result.summary = run_lemma1(ctx);
    ctx.write_json("lemma1_report.json", result.summary);
  } else if (command == "statphase") {
    result.summary = run_statphase(ctx);
    nlohmann::json boxes = run_parallelepiped(ctx);
    result.summary["parallelepiped"] = boxes;
  } else if (command == "opnorm")
    result.summary = run_opnorm(ctx);
  else if (command == "besov")
    result.summary = run_besov(ctx);
  else if (command == "seq-ineq")
    result.summary = run_seqineq(ctx);
  else if (command == "all") {
    result.summary = run_all(ctx);
    if (!result.summary.at("all_pass").get<bool>()) result.exit_code = 3;
  } else
    throw ValidationError("unknown command: " + command);

  const auto t1 = std::chrono::steady_clock::now();
  const double wall = std::chrono::duration<double>(t1 - t0).count();

  nlohmann::json entries = nlohmann::json::array();
  for (const auto& rel : ctx.artifacts) {
    const fs::path p = ctx.outdir / rel;
    const std::string bytes = file_bytes(p);
    entries.push_back(
        {{"path", rel}, {"sha256", Sha256::hash(bytes)}, {"bytes", bytes.size()}});
  }
  nlohmann::json manifest = {{"command", command},
                             {"version", kVersion},
                             {"config_hash", config.hash()},
                             {"seed", config.seed},
                             {"wall_time_seconds", wall},
                             {"artifacts", entries}};
  {
    std::ofstream os(ctx.outdir / "manifest.json", std::ios::binary);
    os << manifest.dump(2) << "\n";
  }
  result.artifacts = ctx.artifacts;
  return result;
}

}  // namespace oscillint
