#pragma once

#include "config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace henon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

const std::vector<std::string>& command_names();

/// Runs one command, writing its files under `out`. Throws ConfigError for
/// bad configuration and NumericalError when a numerical precondition fails.
/// Returns the exit status of a completed run.
int run_command(const std::string& command, const RunConfig& c, std::ostream& log);

/// run_command with exceptions mapped to exit codes and reported on `err`.
int run(const std::string& command, const RunConfig& c, std::ostream& log, std::ostream& err);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// The acceptance suite. Writes one artifact per criterion under `out` (no
/// timings, so the tree is reproducible) and returns the verdicts, which
/// include the runtime limits.
std::vector<CriterionResult> selftest(const RunConfig& c, std::ostream& log);
std::string format_result(const CriterionResult& r);

}  // namespace henon::cli
