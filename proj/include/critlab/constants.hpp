#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace critlab {

using Matrix = std::vector<std::vector<double>>;

/// Coefficients of the coupled system on the ball B_R.
struct ProblemParams {
  std::size_t d = 0;
  std::vector<double> lambdas;
  Matrix beta;
  double radius = 1.0;

  /// Shape, symmetry and positivity of the diagonal. Throws InvalidInput.
  void validate() const;
  bool cooperative() const;   // all off-diagonal entries >= 0
  bool competitive() const;   // all off-diagonal entries <= 0
};

ProblemParams make_params(std::vector<double> lambdas, Matrix beta, double radius = 1.0);

struct ComponentWindow {
  double lambda = 0.0;
  double lower_margin = 0.0;  // lambda + lambda1
  double upper_margin = 0.0;  // -lambda_star - lambda
  bool admissible = false;
};

struct AdmissibilityReport {
  double lambda1 = 0.0;
  double lambda_star = 0.0;
  double window_low = 0.0;   // -lambda1
  double window_high = 0.0;  // -lambda1 / 4
  std::vector<ComponentWindow> components;
  bool admissible = false;
};

AdmissibilityReport check_admissible(const ProblemParams& params);

/// Best Sobolev constant of D^{1,2}(R^3) into L^6, and its 3/2 power
/// (the Dirichlet energy of the standard bubble). Computed once.
double sobolev_tilde();
double sobolev_tilde_power();

struct LambdaBounds {
  double lambda1 = 0.0;              // smallest discrete Dirichlet eigenvalue
  double lambda1_closed_form = 0.0;  // pi^2 / R^2
  double lambda_star = 0.0;          // lambda1_closed_form / 4
  std::size_t intervals = 0;
};

LambdaBounds lambda_bounds(double radius, std::size_t intervals = 2048);

struct ThresholdConstants {
  double s_tilde = 0.0;
  double s_quotient = 0.0;
  double lambda1 = 0.0;
  double lambda_star = 0.0;
  double cbar = 0.0;
  double k1 = 0.0, k2 = 0.0, k3 = 0.0, k4 = 0.0, k = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double delta = 0.0;
  std::vector<double> m;
  double b_limit = 0.0;
  double p_max = 0.0;
  /// min_i of S~^3 / beta_ii - delta - (3 m_i)^2; positive when delta is consistent.
  double delta_consistency = 0.0;
};

/// All explicit thresholds from single-equation levels m_i and the
/// quotient S = min_i Q_i.
ThresholdConstants compute_constants(const ProblemParams& params, const std::vector<double>& m,
                                 double s_quotient);

}  // namespace critlab
