#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "critlab/constants.hpp"
#include "critlab/nehari.hpp"
#include "critlab/solver.hpp"

namespace critlab {

/// One certified (or refuted) inequality with its numerical margin.
/// pass is true exactly when margin > tolerance.
struct EstimateReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::string> provenance;
  std::vector<std::pair<std::string, double>> details;
  std::vector<std::string> notes;

  void detail(const std::string& key, double value) { details.emplace_back(key, value); }
  double get(const std::string& key) const;  // NaN when absent
};

/// Memoized levels m_i, C_I and A for one parameter set and solver setup.
class LevelOracle {
 public:
  LevelOracle(ProblemParams params, SolveConfig config);

  const ProblemParams& params() const { return params_; }
  const SolveConfig& config() const { return config_; }

  const SolveResult& single(std::size_t i);
  const SolveResult& nehari(const Subset& subset);
  const SolveResult& aggregate();

  std::vector<double> single_levels();
  double s_quotient();  // min_i of the single-equation quotients
  const ThresholdConstants& constants();

  static std::string describe(const SolveResult& r);

 private:
  ProblemParams params_;
  SolveConfig config_;
  std::recursive_mutex mutex_;
  std::map<std::size_t, SolveResult> singles_;
  std::map<Subset, SolveResult> levels_;
  std::unique_ptr<SolveResult> aggregate_;
  std::unique_ptr<ThresholdConstants> constants_;
};

/// Default relative threshold used to certify strict inequalities.
inline constexpr double kStrictMargin = 1e-3;

/// C_I <= Cbar for every subset in `family` (all nonempty subsets when empty).
EstimateReport check_cbar(LevelOracle& oracle, std::vector<Subset> family = {});

/// C <= sum_i m_i, with the Gram dominance and projected-vector checks.
EstimateReport check_sum_m(LevelOracle& oracle);

/// C_I <= C_Q + sum_{i in I \ Q} m_i and the dominance of the mixed matrix M(v).
EstimateReport check_subadditivity(LevelOracle& oracle, const Subset& whole, const Subset& part);

/// A < B and the mountain-pass test family below B with a margin linear in eps.
EstimateReport check_A_lt_B(LevelOracle& oracle, std::vector<double> epsilons = {},
                            std::size_t fine_intervals = 1u << 20);

/// Constant off-diagonal coupling b below the threshold: semitrivial ground
/// state and the contradiction inequality at the nontrivial candidate.
EstimateReport check_semitrivial(LevelOracle& oracle);

/// Strict estimate of C against every proper subsystem plus bubbles, with the
/// competitive L^6 floor and the splitting bound over a test family.
EstimateReport check_competitive(LevelOracle& oracle, std::vector<double> epsilons = {});

/// 2^{(3-d)/2} sqrt(max beta_ii min beta_ii).
double semitrivial_threshold(const ProblemParams& params);

/// Chain quantities at a field vector: A, B, D of the semitrivial chain.
struct ChainTerms {
  double a = 0.0, b = 0.0, d = 0.0;
  double lhs = 0.0;  // A B^2 + 2 A^2 B
  double rhs = 0.0;  // b^3 D^3
};
ChainTerms semitrivial_chain(const FieldVector& u, const ProblemParams& params, double coupling);

std::vector<std::string> check_names();

/// Runs a check by name (see check_names()).
EstimateReport run_check(const std::string& name, LevelOracle& oracle);

}  // namespace critlab
