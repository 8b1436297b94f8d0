#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spectral4/coefficient_io.hpp"

namespace spectral4 {

enum class Command { spectrum, weights, predict, verify, selfcheck };
enum class OutputFormat { json, csv };

struct RunConfig {
  Command command = Command::spectrum;
  int problem = 3;
  int nmax = 10;
  std::string coeffs = "zero";
  std::size_t grid = kDefaultGrid;  // used for presets only
  double tol = 1e-12;
  OutputFormat format = OutputFormat::json;
  std::optional<std::string> out;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitNonConvergence = 2;
inline constexpr int kExitBadInput = 3;

/// Throws InputError on unknown flags or values outside their ranges.
RunConfig parse_args(const std::vector<std::string>& args);
void validate(const RunConfig& config);

/// Runs one command; results go to `out`, diagnostics to `err`. Returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, mapping input errors to kExitBadInput. `args` excludes the program name.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spectral4
