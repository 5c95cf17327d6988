#pragma once

#include <ostream>
#include <string>

#include "critlab/estimates.hpp"
#include "critlab/run_config.hpp"
#include "critlab/solver.hpp"

namespace critlab {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 2;
inline constexpr int numerical_failure = 3;
}  // namespace exit_code

struct RunOutcome {
  int exit_code = exit_code::ok;
  std::string message;
  std::string directory;
};

/// Executes one run and writes manifest.json, results.json and CSV tables
/// into config.output. Never throws; errors map to exit codes.
RunOutcome run(const RunConfig& config, std::ostream& log);

/// Reads the config echoed in a manifest.json.
RunConfig config_from_manifest(const std::string& path);

/// JSON forms used in results.json.
std::string solve_result_json(const SolveResult& result);
std::string report_json(const EstimateReport& report);

/// Locale-independent shortest round-trip decimal form.
std::string format_number(double value);

}  // namespace critlab
