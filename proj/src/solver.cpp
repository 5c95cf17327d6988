#include "critlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include "critlab/bubbles.hpp"
#include "critlab/error.hpp"

namespace critlab {

namespace {

enum class Constraint { nehari, aggregate };

// Residual rho_i = (K + lambda_i W) u_i - W sum_{j in I} beta_ij |u_j|^3 |u_i| u_i,
// the exact derivative of the discrete energy with respect to u_i.
std::vector<std::vector<double>> energy_derivative(const FieldVector& u, const ProblemParams& p,
                                                   const Subset& subset) {
  const auto& grid = *u.grid();
  const std::size_t size = grid.size();
  const auto w = grid.weights();
  std::vector<std::vector<double>> cubes(subset.size(), std::vector<double>(size));
  for (std::size_t a = 0; a < subset.size(); ++a) {
    const auto v = u[subset[a]].values();
    for (std::size_t k = 0; k < size; ++k) {
      const double x = std::abs(v[k]);
      cubes[a][k] = x * x * x;
    }
  }
  std::vector<std::vector<double>> rho(subset.size(), std::vector<double>(size, 0.0));
  std::vector<double> coupling(size);
  for (std::size_t a = 0; a < subset.size(); ++a) {
    const std::size_t i = subset[a];
    const auto v = u[i].values();
    grid.apply_stiffness(v, rho[a]);
    std::fill(coupling.begin(), coupling.end(), 0.0);
    for (std::size_t b = 0; b < subset.size(); ++b) {
      const double beta = p.beta[i][subset[b]];
      if (beta == 0.0) continue;
      for (std::size_t k = 0; k < size; ++k) coupling[k] += beta * cubes[b][k];
    }
    const double lambda = p.lambdas[i];
    for (std::size_t k = 0; k < size; ++k) {
      rho[a][k] += w[k] * (lambda * v[k] - coupling[k] * std::abs(v[k]) * v[k]);
    }
    rho[a][size - 1] = 0.0;
  }
  return rho;
}

double sum_norms(const FieldVector& u, const ProblemParams& p, const Subset& subset) {
  double s = 0.0;
  for (std::size_t i : subset) s += h1_inner(u[i], u[i], p.lambdas[i]);
  return s;
}

struct DescentOutcome {
  FieldVector fields;
  double level = std::numeric_limits<double>::infinity();
  std::vector<double> history;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string status;
};

class Descent {
 public:
  Descent(const ProblemParams& p, Subset subset, Constraint constraint, const SolveConfig& cfg)
      : p_(p), subset_(std::move(subset)), constraint_(constraint), cfg_(cfg) {}

  FieldVector project(const FieldVector& v) const {
    if (constraint_ == Constraint::nehari) return project_system(v, p_, subset_).fields;
    return project_aggregate(v, p_).fields;
  }

  // On either constraint set the energy equals one third of the quadratic part.
  double level(const FieldVector& u) const { return sum_norms(u, p_, subset_) / 3.0; }

  DescentOutcome run(const FieldVector& start) const {
    DescentOutcome out;
    FieldVector u = project(start);
    double j = level(u);
    out.history.push_back(j);
    double step = cfg_.initial_step;
    int quiet = 0;
    const auto& grid = *u.grid();
    const std::size_t size = grid.size();
    out.status = "max_iterations";
    int it = 0;
    for (; it < cfg_.max_iterations; ++it) {
      const auto rho = energy_derivative(u, p_, subset_);
      std::vector<std::vector<double>> g(subset_.size());
      double g2 = 0.0;
      for (std::size_t a = 0; a < subset_.size(); ++a) {
        g[a] = grid.solve_shifted(rho[a], p_.lambdas[subset_[a]]);
        for (std::size_t k = 0; k + 1 < size; ++k) g2 += rho[a][k] * g[a][k];
      }
      out.gradient_norm = std::sqrt(std::max(g2, 0.0) / (3.0 * j));
      if (out.gradient_norm <= cfg_.gradient_tolerance) {
        out.converged = true;
        out.status = "converged";
        break;
      }
      bool accepted = false;
      double tau = step;
      FieldVector trial_u;
      double trial_j = 0.0;
      for (int k = 0; k < 60; ++k, tau *= 0.5) {
        std::vector<ComponentField> comps = u.components();
        for (std::size_t a = 0; a < subset_.size(); ++a) {
          const auto v = u[subset_[a]].values();
          std::vector<double> next(size);
          for (std::size_t m = 0; m < size; ++m) next[m] = std::abs(v[m] - tau * g[a][m]);
          comps[subset_[a]] = ComponentField(u.grid(), std::move(next), true);
        }
        try {
          trial_u = project(FieldVector(std::move(comps)));
        } catch (const NumericalFailure&) {
          continue;
        } catch (const InvalidInput&) {
          continue;
        }
        trial_j = level(trial_u);
        if (std::isfinite(trial_j) && trial_j <= j - cfg_.armijo * tau * g2) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        out.status = "stalled";
        break;
      }
      const double decrease = (j - trial_j) / std::abs(j);
      u = std::move(trial_u);
      j = trial_j;
      out.history.push_back(j);
      step = std::min(2.0 * tau, cfg_.max_step);
      quiet = decrease < cfg_.energy_tolerance ? quiet + 1 : 0;
      if (quiet >= cfg_.stall_window) {
        out.status = "stalled";
        ++it;
        break;
      }
    }
    out.iterations = it;
    out.fields = std::move(u);
    out.level = j;
    return out;
  }

 private:
  const ProblemParams& p_;
  Subset subset_;
  Constraint constraint_;
  SolveConfig cfg_;
};

struct Start {
  std::string label;
  FieldVector fields;
};

FieldVector profile(const GridPtr& grid, std::size_t d, const std::vector<std::pair<std::size_t, double>>& scales) {
  FieldVector u(grid, d);
  for (const auto& [i, eps] : scales) u[i] = cutoff_test_field(eps, grid);
  return u;
}

SolveResult finish(const ProblemParams& p, const Subset& subset, LevelKind kind, DescentOutcome run,
                   std::string start) {
  SolveResult r;
  r.kind = kind;
  r.subset = subset;
  r.level = run.level;
  r.fields = std::move(run.fields);
  r.energy_history = std::move(run.history);
  r.gradient_norm = run.gradient_norm;
  r.iterations = run.iterations;
  r.converged = run.converged;
  r.status = run.status;
  r.regime = coupling_regime(p);
  r.start = std::move(start);
  r.nehari = nehari_report(r.fields, p, subset);
  r.diagnostics = detect_concentration(r.fields);
  double top = 0.0;
  for (std::size_t i = 0; i < p.d; ++i) {
    r.l6.push_back(lp_mixed(r.fields[i], r.fields[i], 3.0));
    top = std::max(top, r.l6.back());
  }
  for (std::size_t i : subset) {
    if (r.l6[i] <= 1e-10 * top) r.semitrivial = true;
  }
  return r;
}

SolveResult best_of(const ProblemParams& p, const Subset& subset, Constraint constraint, LevelKind kind,
                    const SolveConfig& cfg, const std::vector<Start>& starts) {
  const Descent engine(p, subset, constraint, cfg);
  DescentOutcome best;
  std::string label;
  std::string failures;
  for (const auto& s : starts) {
    try {
      DescentOutcome out = engine.run(s.fields);
      if (out.level < best.level) {
        best = std::move(out);
        label = s.label;
      }
    } catch (const NumericalFailure& e) {
      failures += " [" + s.label + ": " + e.what() + "]";
    }
  }
  if (!std::isfinite(best.level)) {
    throw NumericalFailure("every initial profile failed to project:" + failures);
  }
  return finish(p, subset, kind, std::move(best), label);
}

void require_grid(const ProblemParams& p, const SolveConfig& cfg) {
  p.validate();
  cfg.validate();
}

}  // namespace

void SolveConfig::validate() const {
  if (intervals < 256) throw InvalidInput("solve.intervals must be at least 256");
  if (max_iterations <= 0) throw InvalidInput("solve.max_iterations must be positive");
  if (!(energy_tolerance > 0.0)) throw InvalidInput("solve.energy_tolerance must be positive");
  if (!(gradient_tolerance > 0.0)) throw InvalidInput("solve.gradient_tolerance must be positive");
  if (!(initial_step > 0.0) || !(max_step >= initial_step)) throw InvalidInput("solve step bounds are invalid");
  if (!(armijo > 0.0 && armijo < 0.5)) throw InvalidInput("solve.armijo must lie in (0, 0.5)");
  if (stall_window <= 0) throw InvalidInput("solve.stall_window must be positive");
  if (!(start_scale > 0.0 && start_scale < 1.0)) throw InvalidInput("solve.start_scale must lie in (0, 1)");
  if (init != "auto" && init != "bubble" && init != "two_scale") {
    throw InvalidInput("solve.init must be one of auto, bubble, two_scale");
  }
}

const char* to_string(LevelKind kind) {
  switch (kind) {
    case LevelKind::single: return "m";
    case LevelKind::nehari: return "C";
    case LevelKind::aggregate: return "A";
  }
  return "?";
}

bool ConcentrationReport::any() const {
  return std::any_of(concentrated.begin(), concentrated.end(), [](bool b) { return b; });
}

std::string coupling_regime(const ProblemParams& params) {
  if (params.d == 1 || params.cooperative()) return "cooperative";
  if (params.competitive()) return "competitive";
  return "outside proven regime";
}

double energy(const FieldVector& u, const ProblemParams& params, const Subset& subset) {
  const InteractionData data = interaction_data(u, params, subset);
  double quad = 0.0, quart = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    quad += data.norms[a];
    for (std::size_t b = 0; b < subset.size(); ++b) quart += data.mixed[a][b];
  }
  return 0.5 * quad - quart / 6.0;
}

double energy(const FieldVector& u, const ProblemParams& params) {
  return energy(u, params, full_subset(params.d));
}

FieldVector gradient(const FieldVector& u, const ProblemParams& params) {
  if (u.dim() != params.d) throw InvalidInput("field dimension does not match params.d");
  const Subset all = full_subset(params.d);
  const auto rho = energy_derivative(u, params, all);
  std::vector<ComponentField> comps;
  comps.reserve(params.d);
  for (std::size_t i = 0; i < params.d; ++i) {
    comps.emplace_back(u.grid(), u.grid()->solve_stiffness(rho[i]), true);
  }
  return FieldVector(std::move(comps));
}

ConcentrationReport detect_concentration(const FieldVector& u) {
  ConcentrationReport rep;
  const double h = u.grid()->spacing();
  const double root_st = std::sqrt(sobolev_tilde());
  for (const auto& c : u.components()) {
    const double peak = c.max_abs();
    const double l6 = lp_mixed(c, c, 3.0);
    double eps = std::numeric_limits<double>::infinity();
    if (peak > 0.0 && l6 > 0.0) {
      const double ratio = peak * peak / std::cbrt(l6);
      eps = std::sqrt(3.0) / (root_st * ratio);
    }
    rep.effective_radius.push_back(eps);
    rep.mesh_ratio.push_back(eps / h);
    rep.concentrated.push_back(eps < 4.0 * h);
  }
  return rep;
}

SolveResult solve_single(const ProblemParams& params, std::size_t i, const SolveConfig& config) {
  require_grid(params, config);
  if (i >= params.d) throw InvalidInput("component index out of range");
  const GridPtr grid = make_grid(params.radius, config.intervals);
  const Subset subset = {i};
  std::vector<Start> starts;
  starts.push_back({"bubble", profile(grid, params.d, {{i, config.start_scale * params.radius}})});
  SolveResult r = best_of(params, subset, Constraint::nehari, LevelKind::single, config, starts);
  const auto& w = r.fields[i];
  const double norm = h1_inner(w, w, params.lambdas[i]);
  r.quotient = norm / std::cbrt(r.l6[i]);
  const double from_quotient = std::pow(r.quotient, 1.5) / (3.0 * std::sqrt(params.beta[i][i]));
  if (std::abs(from_quotient - r.level) > 1e-9 * r.level) {
    throw NumericalFailure("single-equation level disagrees with its quotient form");
  }
  return r;
}

SolveResult minimize_on_N(const ProblemParams& params, const Subset& subset, const SolveConfig& config) {
  require_grid(params, config);
  if (subset.size() == 1) {
    SolveResult r = solve_single(params, subset.front(), config);
    r.kind = LevelKind::nehari;
    return r;
  }
  const GridPtr grid = make_grid(params.radius, config.intervals);
  const double R = params.radius;
  std::vector<Start> starts;
  const bool two_scale = config.init == "two_scale" || (config.init == "auto" && params.competitive());
  if (config.init != "two_scale") {
    std::vector<std::pair<std::size_t, double>> scales;
    for (std::size_t i : subset) scales.emplace_back(i, config.start_scale * R);
    starts.push_back({"bubble", profile(grid, params.d, scales)});
  }
  if (two_scale) {
    // One broad component, the rest at successively narrower scales.
    const std::size_t q = subset.size();
    for (std::size_t rot = 0; rot < q; ++rot) {
      std::vector<std::pair<std::size_t, double>> scales;
      std::string label = "two_scale:";
      for (std::size_t k = 0; k < q; ++k) {
        const std::size_t i = subset[(rot + k) % q];
        const double eps = k == 0 ? 0.5 * R : R / (16.0 * std::pow(2.0, static_cast<double>(k - 1)));
        scales.emplace_back(i, eps);
        label += (k ? "," : "") + std::to_string(i);
      }
      starts.push_back({label, profile(grid, params.d, scales)});
    }
  }
  return best_of(params, subset, Constraint::nehari, LevelKind::nehari, config, starts);
}

SolveResult minimize_on_M(const ProblemParams& params, const SolveConfig& config) {
  require_grid(params, config);
  if (!params.cooperative()) {
    throw InvalidInput("the aggregate level is only computed for nonnegative off-diagonal coupling");
  }
  const GridPtr grid = make_grid(params.radius, config.intervals);
  const double eps = config.start_scale * params.radius;
  std::vector<Start> starts;
  for (std::size_t i = 0; i < params.d; ++i) {
    starts.push_back({"semitrivial:" + std::to_string(i), profile(grid, params.d, {{i, eps}})});
  }
  if (params.d > 1) {
    std::vector<std::pair<std::size_t, double>> same, mixed;
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> spread(0.5, 2.0);
    for (std::size_t i = 0; i < params.d; ++i) {
      same.emplace_back(i, eps);
      mixed.emplace_back(i, eps * spread(rng));
    }
    starts.push_back({"symmetric", profile(grid, params.d, same)});
    starts.push_back({"perturbed", profile(grid, params.d, mixed)});
  }
  SolveResult r = best_of(params, full_subset(params.d), Constraint::aggregate, LevelKind::aggregate, config,
                          starts);
  return r;
}

}  // namespace critlab
