#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "critlab/constants.hpp"
#include "critlab/nehari.hpp"
#include "critlab/radial_domain.hpp"

namespace critlab {

struct SolveConfig {
  std::size_t intervals = 2048;
  int max_iterations = 20000;
  double energy_tolerance = 1e-14;   // relative energy decrease per step
  double gradient_tolerance = 1e-7;  // relative preconditioned gradient norm
  double initial_step = 1.0;
  double max_step = 64.0;
  double armijo = 1e-4;
  int stall_window = 50;  // accepted steps with negligible decrease before stopping
  std::string init = "auto";  // auto | bubble | two_scale
  double start_scale = 0.125;  // bubble scale as a fraction of the radius
  std::uint64_t seed = 0;

  void validate() const;
};

enum class LevelKind { single, nehari, aggregate };
const char* to_string(LevelKind kind);

struct ConcentrationReport {
  std::vector<double> effective_radius;  // best-fit bubble scale per component
  std::vector<double> mesh_ratio;        // effective_radius / h
  std::vector<bool> concentrated;        // effective_radius < 4 h
  bool any() const;
};

struct SolveResult {
  FieldVector fields;
  LevelKind kind = LevelKind::nehari;
  Subset subset;
  double level = 0.0;
  double quotient = 0.0;  // single-equation quotient ||u||^2 / |u|_6^2 (single kind only)
  NehariReport nehari;
  ConcentrationReport diagnostics;
  std::vector<double> l6;  // |u_i|_6^6 per component
  std::vector<double> energy_history;
  double gradient_norm = 0.0;  // relative, preconditioned
  int iterations = 0;
  bool converged = false;
  std::string status;  // converged | stalled | max_iterations
  std::string regime;  // cooperative | competitive | outside proven regime
  bool semitrivial = false;
  std::string start;  // label of the winning initial profile
};

/// J restricted to the components in `subset`.
double energy(const FieldVector& u, const ProblemParams& params, const Subset& subset);
double energy(const FieldVector& u, const ProblemParams& params);

/// H_0^1-preconditioned gradient: component i solves K g_i = (K + lambda_i W) u_i
/// - W sum_j beta_ij |u_j|^3 |u_i| u_i.
FieldVector gradient(const FieldVector& u, const ProblemParams& params);

/// Best-fit bubble scale from |u|_inf^2 / |u|_6^2.
ConcentrationReport detect_concentration(const FieldVector& u);

/// Single-equation ground state of component i.
SolveResult solve_single(const ProblemParams& params, std::size_t i, const SolveConfig& config);

/// Least level on the Nehari set of the subsystem `subset`.
SolveResult minimize_on_N(const ProblemParams& params, const Subset& subset, const SolveConfig& config);

/// Least level on the aggregate Nehari set (generalized ground state).
SolveResult minimize_on_M(const ProblemParams& params, const SolveConfig& config);

std::string coupling_regime(const ProblemParams& params);

}  // namespace critlab
