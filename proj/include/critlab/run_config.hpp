#pragma once

// Serializable description of one run. Every field has a default, so an
// empty document is a valid config: two components on the unit ball with
// lambda_i = -pi^2 / 2 and no coupling.

#include <cstdint>
#include <string>
#include <vector>

#include "critlab/constants.hpp"
#include "critlab/solver.hpp"

namespace critlab {

/// Which level `solve` and `sweep` compute: m_i, C_I or A.
struct TargetSpec {
  std::string level = "C";  // m | C | A
  std::size_t component = 0;
  std::vector<std::size_t> subset;  // empty means all components
};

struct ExpansionSpec {
  std::vector<double> epsilons = {0.01, 0.005, 0.0025, 0.00125};  // fractions of R
  std::size_t intervals = std::size_t{1} << 20;
};

/// One swept value, either absolute or a multiple of the threshold K.
struct SweepValue {
  double value = 0.0;
  bool times_k = false;
  bool operator==(const SweepValue&) const = default;
};

struct SweepSpec {
  std::string entry = "beta[0][1]";  // beta[i][j] (kept symmetric) or lambdas[i]
  std::vector<SweepValue> values;
  unsigned workers = 1;
};

struct RunConfig {
  std::string mode = "constants";  // constants | solve | verify | expansion | sweep
  ProblemParams params;
  SolveConfig solve;
  TargetSpec target;
  std::vector<std::string> checks;  // empty means every check whose preconditions hold
  ExpansionSpec expansion;
  SweepSpec sweep;
  std::string output = "critlab_out";
  std::uint64_t seed = 0;

  /// Throws InvalidInput naming the failing field.
  void validate() const;
};

RunConfig default_run_config();

/// Parses a JSON document; missing fields keep their defaults. Throws
/// InvalidInput on malformed input or unknown keys.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

/// Canonical JSON form; parse_run_config(to_json(c)) reproduces c.
std::string to_json(const RunConfig& config, int indent = 2);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace critlab
