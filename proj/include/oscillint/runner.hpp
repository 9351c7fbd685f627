#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "oscillint/config.hpp"

namespace oscillint {

struct RunResult {
  int exit_code = 0;
  nlohmann::json summary;
  std::vector<std::string> artifacts;  // paths relative to the output directory
};

/// Execute one experiment command: symbol, kernel, lemma1, statphase, opnorm,
/// besov, seq-ineq, or all. Every run writes its artifacts plus a manifest
/// (config hash, seed, version, wall time, per-artifact content hashes) under
/// the output directory. `all` evaluates the full acceptance checklist and
/// returns exit code 3 when a threshold is violated.
RunResult run_command(const std::string& command, const Config& config,
                      const std::filesystem::path& output_dir);

/// The command set accepted by run_command, in display order.
const std::vector<std::string>& command_names();

}  // namespace oscillint
