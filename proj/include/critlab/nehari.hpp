#pragma once

#include <cstddef>
#include <vector>

#include "critlab/constants.hpp"
#include "critlab/radial_domain.hpp"

namespace critlab {

/// Ordered component indices, e.g. {0, 2}.
using Subset = std::vector<std::size_t>;

Subset full_subset(std::size_t d);

/// Quadratic norms and coupling integrals restricted to a subset. Entries are
/// indexed by position within the subset.
struct InteractionData {
  Subset subset;
  std::vector<double> norms;  // ||u_i||_i^2
  Matrix mixed;               // beta_ij int |u_i|^3 |u_j|^3
};

InteractionData interaction_data(const FieldVector& u, const ProblemParams& params,
                                 const Subset& subset);

struct DominanceReport {
  Matrix a;
  std::vector<double> margins;  // a_ii - sum_{j != i} |a_ij|
  double min_margin = 0.0;
  bool dominant = false;
  double min_eigenvalue = 0.0;
};

/// a_ii = 4 beta_ii |u_i|_6^6 + sum_{j != i} b_ij, a_ij = 3 b_ij.
DominanceReport matrix_a(const InteractionData& data);

struct NehariReport {
  std::vector<double> residuals;  // G_i = ||u_i||^2 - sum_j b_ij
  bool on_manifold = false;
  double relative_residual = 0.0;  // max |G_i| / sum ||u_i||^2
  DominanceReport a;
  double dominance_margin = 0.0;
};

NehariReport nehari_report(const InteractionData& data, double tol = 1e-8);
NehariReport nehari_report(const FieldVector& u, const ProblemParams& params,
                           const Subset& subset, double tol = 1e-8);

/// f(t) = 1/2 sum t_i^2 ||u_i||^2 - 1/6 sum t_i^3 t_j^3 b_ij.
double scaling_objective(const InteractionData& data, const std::vector<double>& t);

struct SingleProjection {
  double t = 0.0;
  ComponentField field;
};

/// t^4 = ||u||_i^2 / (beta_ii |u|_6^6).
SingleProjection project_single(const ComponentField& u, const ProblemParams& params,
                                std::size_t i);

struct ProjectionOptions {
  int max_iterations = 100;
  double tolerance = 1e-12;  // relative residual target
};

struct SystemProjection {
  std::vector<double> t;  // per subset entry
  FieldVector fields;     // components outside the subset are unchanged
  NehariReport report;
  int iterations = 0;
};

/// Scales each u_i (i in subset) by t_i so that the result lies on the
/// Nehari set of the subsystem. Newton on s = t^3 with positivity damping.
SystemProjection project_system(const FieldVector& u, const ProblemParams& params,
                                const Subset& subset, const ProjectionOptions& options = {});

/// Same on precomputed data; returns the scalings.
std::vector<double> solve_scalings(const InteractionData& data, bool cooperative,
                                   const ProjectionOptions& options, int* iterations = nullptr);

struct AggregateProjection {
  double t = 0.0;
  FieldVector fields;
};

/// t^4 = sum ||u_i||^2 / sum_ij b_ij.
AggregateProjection project_aggregate(const FieldVector& u, const ProblemParams& params);

/// Largest value of the scaling objective on a 5^q lattice t*(1 + k spread),
/// k in {-2..2}, minus its value at t*. Nonpositive when t* is a local max.
double projection_lattice_excess(const InteractionData& data, const std::vector<double>& t,
                                 double spread = 0.02);

/// Multipliers mu solving A mu = -G; small when constrained criticality
/// is free criticality.
std::vector<double> lagrange_witness(const InteractionData& data);

}  // namespace critlab
