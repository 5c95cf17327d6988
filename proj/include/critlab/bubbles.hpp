#pragma once

#include <cstdint>
#include <vector>

#include "critlab/constants.hpp"
#include "critlab/radial_domain.hpp"

namespace critlab {

/// U_eps(r) = (3 eps^2)^{1/4} (eps^2 + r^2)^{-1/2}.
double bubble_value(double epsilon, double r);

/// U_eps sampled on the grid without truncation (non-conforming).
ComponentField bubble_field(double epsilon, GridPtr grid);

/// w_eps = U_eps cos(pi r / 2R), which vanishes at r = R.
ComponentField cutoff_test_field(double epsilon, GridPtr grid);

/// Whole-space integrals of U_eps: Dirichlet energy and L^6 norm to the 6th.
struct WholeSpaceIntegrals {
  double gradient = 0.0;
  double l6 = 0.0;
};
WholeSpaceIntegrals bubble_whole_space(double epsilon);

struct ExpansionRow {
  double epsilon = 0.0;
  double grad_energy = 0.0;
  double l6 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
  double l3_log_ratio = 0.0;  // l3 / (eps^{3/2} |ln eps|)
};

struct ExpansionTable {
  std::vector<ExpansionRow> rows;
  double reference = 0.0;       // S~^{3/2}
  double grad_slope = 0.0;      // leading coefficient of grad_energy - reference
  double l2_slope = 0.0;        // leading coefficient of l2
  double l6_order = 0.0;        // log-log slope of |l6 - reference|
  std::vector<double> l6_halving_factors;   // shrink factor of |l6 - reference| per halving
  double l3_ratio_variation = 0.0;          // max relative change of l3_log_ratio per halving
};

/// Tabulates integrals of w_eps on `grid` and fits the leading coefficients
/// with y = a eps + b eps^2. Refuses eps below 10 grid spacings.
ExpansionTable expansion_report(const std::vector<double>& epsilons, const GridPtr& grid);

struct PmaxResult {
  double value = 0.0;
  std::vector<double> argmax;  // unit vector with nonnegative entries
  bool certified = false;      // dense-grid check ran (d <= 3)
  double certificate = 0.0;    // best dense-grid value when certified
  int starts = 0;
};

/// max over the unit sphere of sum_ij beta_ij |x_i|^3 |x_j|^3.
PmaxResult pmax(const Matrix& beta, std::uint64_t seed = 0);

/// (1/3) P_max^{-1/2} S~^{3/2}.
double limit_level(const Matrix& beta);

}  // namespace critlab
