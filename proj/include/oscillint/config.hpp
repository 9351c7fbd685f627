#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "oscillint/bumps.hpp"

namespace oscillint {

/// Experiment configuration. Every field has a default; a config file only
/// needs the keys it overrides. The canonical JSON form (all keys, sorted)
/// feeds the manifest hash.
struct Config {
  std::uint64_t seed = 20260801;
  std::string output_dir = "out";
  int threads = 0;  // 0: hardware / OSCILLINT_THREADS

  nlohmann::json bumps = nlohmann::json::object();  // overrides for BumpSet
  double box_half_side = 2.0;

  std::vector<double> lemma1_ladder = {16, 32, 64, 128};
  int lemma1_n_r = 64;
  int lemma1_n_theta = 64;

  std::vector<double> kernel_ladder = {16, 32, 64};
  int kernel_points = 100;

  std::vector<double> opnorm_ladder = {16, 32, 64, 128};
  std::vector<double> opnorm_p = {1.0, 4.0 / 3.0, 2.0};
  double ball_radius = 0.01;

  std::vector<double> statphase_ladder = {8, 16, 32, 64};
  double statphase_nu = 0.05;

  std::vector<double> parallelepiped_ladder = {8, 16};
  double parallelepiped_nu = 0.05;
  int parallelepiped_grid_n = 8;
  int quad_points_d3 = 64;

  std::vector<double> besov_ladder = {16, 32, 64, 128};
  std::vector<double> dilation_t_ladder = {0.25, 0.5, 1.0, 2.0, 17.0};
  double besov_coverage_factor = 8.0;

  std::vector<double> seq_A = {std::sqrt(2.0), 2.0, 2.0 * std::sqrt(2.0), 4.0};
  std::uint64_t seq_trials = 100000;
  int seq_max_len = 64;

  int interp_random_spectra = 1000;
  int interp_max_len = 32;

  static Config from_json(const nlohmann::json& j);
  static Config load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
  std::string canonical() const;
  std::string hash() const;

  std::shared_ptr<const BumpSet> make_bumps() const;
  void validate() const;
};

}  // namespace oscillint
