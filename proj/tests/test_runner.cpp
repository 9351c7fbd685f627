#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oscillint/config.hpp"
#include "oscillint/runner.hpp"
#include "oscillint/sha256.hpp"

using namespace oscillint;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}
}  // namespace

TEST_CASE("sha256 known vectors") {
  CHECK(Sha256::hash("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(Sha256::hash("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("config: defaults validate, json round-trips, hash is stable") {
  Config cfg;
  cfg.validate();
  const Config back = Config::from_json(cfg.to_json());
  CHECK(back.canonical() == cfg.canonical());
  CHECK(back.hash() == cfg.hash());
  CHECK(cfg.hash().size() == 64);

  nlohmann::json partial = {{"seed", 7}, {"lemma1", {{"ladder", {8.0, 16.0}}}}};
  const Config overridden = Config::from_json(partial);
  CHECK(overridden.seed == 7);
  CHECK(overridden.lemma1_ladder == std::vector<double>{8.0, 16.0});
  CHECK(overridden.kernel_ladder == cfg.kernel_ladder);

  nlohmann::json bad = {{"opnorm", {{"p_values", {0.5}}}}};
  CHECK_THROWS_AS(Config::from_json(bad), ValidationError);
  CHECK_THROWS_AS(Config::load("/nonexistent/oscillint.json"), ValidationError);
}

TEST_CASE("runner: unknown command is rejected") {
  Config cfg;
  CHECK_THROWS_AS(run_command("bogus", cfg, fresh_dir("oscillint_bogus")),
                  ValidationError);
}

TEST_CASE("runner: seq-ineq writes a manifest with valid artifact hashes") {
  Config cfg;
  cfg.seq_trials = 500;
  cfg.seq_A = {2.0};
  const fs::path dir = fresh_dir("oscillint_seq");
  const RunResult result = run_command("seq-ineq", cfg, dir);
  CHECK(result.exit_code == 0);
  REQUIRE(fs::exists(dir / "seqineq_report.json"));
  REQUIRE(fs::exists(dir / "manifest.json"));

  const nlohmann::json manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest.at("config_hash") == cfg.hash());
  CHECK(manifest.at("seed") == cfg.seed);
  bool found = false;
  for (const auto& entry : manifest.at("artifacts")) {
    if (entry.at("path") == "seqineq_report.json") {
      found = true;
      CHECK(entry.at("sha256") == Sha256::hash(slurp(dir / "seqineq_report.json")));
    }
  }
  CHECK(found);

  // Same config, fresh directory: byte-identical reports.
  const fs::path dir2 = fresh_dir("oscillint_seq2");
  run_command("seq-ineq", cfg, dir2);
  CHECK(slurp(dir / "seqineq_report.json") == slurp(dir2 / "seqineq_report.json"));
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("runner: lemma1 subcommand emits report, table, and heat map") {
  Config cfg;
  cfg.lemma1_ladder = {8.0};
  cfg.lemma1_n_r = 16;
  cfg.lemma1_n_theta = 16;
  const fs::path dir = fresh_dir("oscillint_lemma1");
  const RunResult result = run_command("lemma1", cfg, dir);
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(dir / "lemma1_report.json"));
  CHECK(fs::exists(dir / "lemma1_scan_8.csv"));
  CHECK(fs::exists(dir / "lemma1_heatmap_8.svg"));
  const nlohmann::json rep = nlohmann::json::parse(slurp(dir / "lemma1_report.json"));
  CHECK(rep.at("rows").size() == 1);
  CHECK(rep.at("rows")[0].at("sup_discrepancy").get<double>() > 0.0);
  fs::remove_all(dir);
}
