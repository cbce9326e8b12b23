#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace circinv::cli {

struct RunConfig {
  std::string command;
  double r = 1.0;
  int n_modes = 32;
  int grid_size = 512;
  std::optional<std::filesystem::path> curve;
  std::filesystem::path out = ".";
  std::uint64_t seed = 7;
  int k = 1;
  double amplitude = 0.02;
  int pairs = 200;
  int max_iter = 50;
  double tol_residual = 1e-9;
};

/// Exit codes: 0 success, 1 numerical failure, 2 usage error. The one-line
/// summary goes to out; failures print {"error", "operation", "message"}
/// JSON to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Executes an already validated configuration and returns the summary line.
std::string execute(const RunConfig& config);

}  // namespace circinv::cli
