#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>

#include "oscillint/config.hpp"
#include "oscillint/errors.hpp"
#include "oscillint/runner.hpp"
#include "oscillint/version.hpp"

namespace {

int dispatch(const std::string& command, const std::string& config_path,
             const std::string& output_dir, double seq_A, std::uint64_t seq_trials) {
  oscillint::Config cfg;
  if (!config_path.empty()) {
    if (!std::filesystem::exists(config_path)) {
      std::cerr << "error: config file not found: " << config_path << "\n";
      return 1;
    }
    cfg = oscillint::Config::load(config_path);
  }
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  if (seq_A > 0.0) cfg.seq_A = {seq_A};
  if (seq_trials > 0) cfg.seq_trials = seq_trials;

  const auto result = oscillint::run_command(command, cfg, cfg.output_dir);
  std::cout << command << ": wrote " << result.artifacts.size() << " artifacts under "
            << cfg.output_dir << "\n";
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for rapidly oscillating multiplier symbols"};
  app.set_version_flag("--version", oscillint::kVersion);
  app.require_subcommand(1);

  std::string config_path, output_dir;
  double seq_A = 0.0;
  std::uint64_t seq_trials = 0;

  for (const auto& name : oscillint::command_names()) {
    CLI::App* sub = app.add_subcommand(name, name + std::string(" experiment"));
    sub->add_option("--config", config_path, "JSON config file (defaults apply if omitted)");
    sub->add_option("--output-dir", output_dir, "override the config output directory");
    if (name == "seq-ineq") {
      sub->add_option("--A", seq_A, "run a single weight base instead of the config set");
      sub->add_option("--trials", seq_trials, "randomized search trials");
    }
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    return dispatch(command, config_path, output_dir, seq_A, seq_trials);
  } catch (const oscillint::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const oscillint::CoverageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
