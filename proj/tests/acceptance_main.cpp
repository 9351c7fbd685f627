// Acceptance suite: runs every checklist criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 3 on any violation.

#include <cstring>
#include <iostream>
#include <string>

#include "oscillint/config.hpp"
#include "oscillint/errors.hpp"
#include "oscillint/runner.hpp"

int main(int argc, char** argv) {
  std::string outdir = "acceptance_out";
  std::string config_path;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--output-dir") == 0 && i + 1 < argc)
      outdir = argv[++i];
    else if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc)
      config_path = argv[++i];
  }
  try {
    oscillint::Config cfg;
    if (!config_path.empty()) cfg = oscillint::Config::load(config_path);
    cfg.output_dir = outdir;
    const auto result = oscillint::run_command("all", cfg, outdir);
    std::cout << (result.exit_code == 0 ? "acceptance: all criteria passed"
                                        : "acceptance: criteria FAILED")
              << "\n";
    return result.exit_code;
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
