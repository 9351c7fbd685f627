#include "oscillint/config.hpp"

#include <cmath>
#include <fstream>

#include "oscillint/sha256.hpp"

namespace oscillint {

namespace {

template <class T>
void maybe(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void check_ladder(const std::vector<double>& ladder, const char* name) {
  if (ladder.empty()) throw ValidationError(std::string("config: empty ladder ") + name);
  double prev = 0.0;
  for (const double v : ladder) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ValidationError(std::string("config: ladder ") + name + " must be positive");
    if (v <= prev)
      throw ValidationError(std::string("config: ladder ") + name +
                            " must be strictly increasing");
    prev = v;
  }
}

}  // namespace

Config Config::from_json(const nlohmann::json& j) {
  Config c;
  maybe(j, "seed", c.seed);
  maybe(j, "output_dir", c.output_dir);
  maybe(j, "threads", c.threads);
  if (j.contains("bumps")) c.bumps = j.at("bumps");
  if (j.contains("grid")) maybe(j.at("grid"), "box_half_side", c.box_half_side);
  if (j.contains("lemma1")) {
    const auto& s = j.at("lemma1");
    maybe(s, "ladder", c.lemma1_ladder);
    maybe(s, "n_r", c.lemma1_n_r);
    maybe(s, "n_theta", c.lemma1_n_theta);
  }
  if (j.contains("kernel")) {
    const auto& s = j.at("kernel");
    maybe(s, "ladder", c.kernel_ladder);
    maybe(s, "n_points", c.kernel_points);
  }
  if (j.contains("opnorm")) {
    const auto& s = j.at("opnorm");
    maybe(s, "ladder", c.opnorm_ladder);
    maybe(s, "p_values", c.opnorm_p);
    maybe(s, "ball_radius", c.ball_radius);
  }
  if (j.contains("statphase")) {
    const auto& s = j.at("statphase");
    maybe(s, "ladder", c.statphase_ladder);
    maybe(s, "nu", c.statphase_nu);
  }
  if (j.contains("parallelepiped")) {
    const auto& s = j.at("parallelepiped");
    maybe(s, "ladder", c.parallelepiped_ladder);
    maybe(s, "nu", c.parallelepiped_nu);
    maybe(s, "grid_n", c.parallelepiped_grid_n);
    maybe(s, "quad_points", c.quad_points_d3);
  }
  if (j.contains("besov")) {
    const auto& s = j.at("besov");
    maybe(s, "ladder", c.besov_ladder);
    maybe(s, "t_ladder", c.dilation_t_ladder);
    maybe(s, "coverage_factor", c.besov_coverage_factor);
  }
  if (j.contains("seq_ineq")) {
    const auto& s = j.at("seq_ineq");
    maybe(s, "A_values", c.seq_A);
    maybe(s, "trials", c.seq_trials);
    maybe(s, "max_len", c.seq_max_len);
  }
  if (j.contains("interp")) {
    const auto& s = j.at("interp");
    maybe(s, "n_random", c.interp_random_spectra);
    maybe(s, "max_len", c.interp_max_len);
  }
  c.validate();
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("config: cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config: " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(j);
}

nlohmann::json Config::to_json() const {
  return {
      {"seed", seed},
      {"output_dir", output_dir},
      {"threads", threads},
      {"bumps", bumps},
      {"grid", {{"box_half_side", box_half_side}}},
      {"lemma1",
       {{"ladder", lemma1_ladder}, {"n_r", lemma1_n_r}, {"n_theta", lemma1_n_theta}}},
      {"kernel", {{"ladder", kernel_ladder}, {"n_points", kernel_points}}},
      {"opnorm",
       {{"ladder", opnorm_ladder}, {"p_values", opnorm_p}, {"ball_radius", ball_radius}}},
      {"statphase", {{"ladder", statphase_ladder}, {"nu", statphase_nu}}},
      {"parallelepiped",
       {{"ladder", parallelepiped_ladder},
        {"nu", parallelepiped_nu},
        {"grid_n", parallelepiped_grid_n},
        {"quad_points", quad_points_d3}}},
      {"besov",
       {{"ladder", besov_ladder},
        {"t_ladder", dilation_t_ladder},
        {"coverage_factor", besov_coverage_factor}}},
      {"seq_ineq", {{"A_values", seq_A}, {"trials", seq_trials}, {"max_len", seq_max_len}}},
      {"interp", {{"n_random", interp_random_spectra}, {"max_len", interp_max_len}}}};
}

std::string Config::canonical() const { return to_json().dump(2); }

std::string Config::hash() const { return Sha256::hash(canonical()); }

std::shared_ptr<const BumpSet> Config::make_bumps() const {
  return BumpSet::from_json(bumps);
}

void Config::validate() const {
  check_ladder(lemma1_ladder, "lemma1");
  check_ladder(kernel_ladder, "kernel");
  check_ladder(opnorm_ladder, "opnorm");
  check_ladder(statphase_ladder, "statphase");
  check_ladder(parallelepiped_ladder, "parallelepiped");
  check_ladder(besov_ladder, "besov");
  if (box_half_side < 2.0)
    throw ValidationError("config: box_half_side must be at least 2");
  if (!(ball_radius > 0.0 && ball_radius <= 0.1))
    throw ValidationError("config: ball_radius must lie in (0, 0.1]");
  for (const double p : opnorm_p)
    if (!(p >= 1.0)) throw ValidationError("config: p values must lie in [1, inf)");
  for (const double A : seq_A)
    if (!(A > 1.0)) throw ValidationError("config: sequence bases must exceed 1");
  if (lemma1_n_r < 16 || lemma1_n_theta < 16)
    throw ValidationError("config: lemma1 grid must be at least 16 x 16");
  if (kernel_points < 1) throw ValidationError("config: kernel n_points must be positive");
  if (!(statphase_nu > 0.0 && statphase_nu < 0.2) ||
      !(parallelepiped_nu > 0.0 && parallelepiped_nu < 0.2))
    throw ValidationError("config: nu must be tiny and positive");
  if (interp_max_len < 2 || seq_max_len < 2)
    throw ValidationError("config: sequence lengths must be at least 2");
  // The randomized searches and the t-ladder accept any positive entries.
  for (const double t : dilation_t_ladder)
    if (!(t > 0.0)) throw ValidationError("config: dilation scales must be positive");
}

}  // namespace oscillint
