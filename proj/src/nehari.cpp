#include "critlab/nehari.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "critlab/error.hpp"

namespace critlab {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m[i][j];
  return out;
}

void check_subset(const Subset& subset, std::size_t d) {
  if (subset.empty()) throw InvalidInput("subset must be nonempty");
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (subset[k] >= d) throw InvalidInput("subset index " + std::to_string(subset[k]) + " out of range");
    for (std::size_t l = 0; l < k; ++l) {
      if (subset[l] == subset[k]) throw InvalidInput("subset has repeated index");
    }
  }
}

// Relative residuals 1 - s_i^{1/3} sum_j b_ij s_j / n_i.
Eigen::VectorXd relative_residual(const Eigen::VectorXd& s, const Eigen::VectorXd& n,
                                  const Eigen::MatrixXd& b) {
  const Eigen::VectorXd bs = b * s;
  Eigen::VectorXd r(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) r(i) = 1.0 - std::cbrt(s(i)) * bs(i) / n(i);
  return r;
}

}  // namespace

Subset full_subset(std::size_t d) {
  Subset s(d);
  for (std::size_t i = 0; i < d; ++i) s[i] = i;
  return s;
}

InteractionData interaction_data(const FieldVector& u, const ProblemParams& params,
                                 const Subset& subset) {
  if (u.dim() != params.d) {
    throw InvalidInput("field has " + std::to_string(u.dim()) + " components, params.d = " +
                       std::to_string(params.d));
  }
  check_subset(subset, params.d);
  InteractionData data;
  data.subset = subset;
  const std::size_t q = subset.size();
  data.norms.resize(q);
  data.mixed.assign(q, std::vector<double>(q, 0.0));
  for (std::size_t a = 0; a < q; ++a) {
    const std::size_t i = subset[a];
    data.norms[a] = h1_inner(u[i], u[i], params.lambdas[i]);
    for (std::size_t b = a; b < q; ++b) {
      const std::size_t j = subset[b];
      const double v = params.beta[i][j] == 0.0 ? 0.0 : params.beta[i][j] * lp_mixed(u[i], u[j], 3.0);
      data.mixed[a][b] = v;
      data.mixed[b][a] = v;
    }
  }
  return data;
}

DominanceReport matrix_a(const InteractionData& data) {
  const std::size_t q = data.norms.size();
  DominanceReport rep;
  rep.a.assign(q, std::vector<double>(q, 0.0));
  for (std::size_t i = 0; i < q; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
      if (j != i) {
        off += data.mixed[i][j];
        rep.a[i][j] = 3.0 * data.mixed[i][j];
      }
    }
    rep.a[i][i] = 4.0 * data.mixed[i][i] + off;
  }
  rep.margins.resize(q);
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < q; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < q; ++j)
      if (j != i) off += std::abs(rep.a[i][j]);
    rep.margins[i] = rep.a[i][i] - off;
    rep.min_margin = std::min(rep.min_margin, rep.margins[i]);
  }
  rep.dominant = rep.min_margin > 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(to_eigen(rep.a), Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = eig.eigenvalues()(0);
  return rep;
}

NehariReport nehari_report(const InteractionData& data, double tol) {
  NehariReport rep;
  const std::size_t q = data.norms.size();
  rep.residuals.resize(q);
  double total = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < q; ++j) s += data.mixed[i][j];
    rep.residuals[i] = data.norms[i] - s;
    total += data.norms[i];
    worst = std::max(worst, std::abs(rep.residuals[i]));
  }
  rep.relative_residual = total > 0.0 ? worst / total : std::numeric_limits<double>::infinity();
  rep.on_manifold = worst <= tol * total;
  rep.a = matrix_a(data);
  rep.dominance_margin = rep.a.min_margin;
  return rep;
}

NehariReport nehari_report(const FieldVector& u, const ProblemParams& params, const Subset& subset,
                           double tol) {
  return nehari_report(interaction_data(u, params, subset), tol);
}

double scaling_objective(const InteractionData& data, const std::vector<double>& t) {
  const std::size_t q = data.norms.size();
  double quad = 0.0, quart = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    quad += t[i] * t[i] * data.norms[i];
    const double ti3 = t[i] * t[i] * t[i];
    for (std::size_t j = 0; j < q; ++j) quart += ti3 * t[j] * t[j] * t[j] * data.mixed[i][j];
  }
  return 0.5 * quad - quart / 6.0;
}

SingleProjection project_single(const ComponentField& u, const ProblemParams& params, std::size_t i) {
  if (i >= params.d) throw InvalidInput("component index out of range");
  if (u.is_zero()) throw InvalidInput("cannot project the zero function");
  const double norm = h1_inner(u, u, params.lambdas[i]);
  const double l6 = lp_mixed(u, u, 3.0);
  if (!(norm > 0.0)) throw NumericalFailure("quadratic norm is not positive; lambda is below -lambda1");
  const double t = std::pow(norm / (params.beta[i][i] * l6), 0.25);
  return {t, u.scaled(t)};
}

std::vector<double> solve_scalings(const InteractionData& data, bool cooperative,
                                   const ProjectionOptions& options, int* iterations) {
  const auto q = static_cast<Eigen::Index>(data.norms.size());
  Eigen::VectorXd n(q);
  for (Eigen::Index i = 0; i < q; ++i) {
    n(i) = data.norms[i];
    if (!(n(i) > 0.0)) {
      throw NumericalFailure("component " + std::to_string(data.subset[i]) +
                             " has nonpositive quadratic norm");
    }
    if (!(data.mixed[i][i] > 0.0)) {
      throw NumericalFailure("component " + std::to_string(data.subset[i]) + " vanishes");
    }
  }
  const Eigen::MatrixXd b = to_eigen(data.mixed);
  bool competitive = true;
  for (Eigen::Index i = 0; i < q; ++i)
    for (Eigen::Index j = 0; j < q; ++j)
      if (i != j && b(i, j) > 0.0) competitive = false;
  if (!competitive) {
    Eigen::LLT<Eigen::MatrixXd> llt(b);
    if (llt.info() != Eigen::Success) {
      throw NumericalFailure(cooperative
                                 ? "coupling matrix B_q is not positive definite; coupling too strong"
                                 : "coupling matrix B_q is indefinite for mixed-sign coupling");
    }
  }

  Eigen::VectorXd s(q);
  for (Eigen::Index i = 0; i < q; ++i) s(i) = std::pow(n(i) / b(i, i), 0.75);

  Eigen::VectorXd r = relative_residual(s, n, b);
  double merit = r.squaredNorm();
  int it = 0;
  for (; it < options.max_iterations && r.cwiseAbs().maxCoeff() > options.tolerance; ++it) {
    Eigen::VectorXd f(q);
    const Eigen::VectorXd bs = b * s;
    for (Eigen::Index i = 0; i < q; ++i) f(i) = n(i) / std::cbrt(s(i)) - bs(i);
    Eigen::MatrixXd jac = -b;
    for (Eigen::Index i = 0; i < q; ++i) jac(i, i) -= n(i) / (3.0 * s(i) * std::cbrt(s(i)));
    const Eigen::VectorXd step = jac.partialPivLu().solve(-f);
    double alpha = 1.0;
    bool accepted = false;
    for (int k = 0; k < 60; ++k, alpha *= 0.5) {
      const Eigen::VectorXd trial = s + alpha * step;
      if (trial.minCoeff() <= 0.0) continue;
      const Eigen::VectorXd rt = relative_residual(trial, n, b);
      const double mt = rt.squaredNorm();
      if (std::isfinite(mt) && mt < merit) {
        s = trial;
        r = rt;
        merit = mt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (iterations) *iterations = it;
  if (!(r.cwiseAbs().maxCoeff() <= options.tolerance)) {
    throw NumericalFailure("Nehari projection did not converge (relative residual " +
                           std::to_string(r.cwiseAbs().maxCoeff()) + ")");
  }
  std::vector<double> t(static_cast<std::size_t>(q));
  for (Eigen::Index i = 0; i < q; ++i) t[i] = std::cbrt(s(i));
  return t;
}

SystemProjection project_system(const FieldVector& u, const ProblemParams& params, const Subset& subset,
                                const ProjectionOptions& options) {
  const InteractionData data = interaction_data(u, params, subset);
  for (std::size_t a = 0; a < subset.size(); ++a) {
    if (u[subset[a]].is_zero()) {
      throw InvalidInput("component " + std::to_string(subset[a]) + " is identically zero");
    }
  }
  SystemProjection out;
  out.t = solve_scalings(data, params.cooperative(), options, &out.iterations);
  std::vector<ComponentField> comps = u.components();
  for (std::size_t a = 0; a < subset.size(); ++a) comps[subset[a]] = u[subset[a]].scaled(out.t[a]);
  out.fields = FieldVector(std::move(comps));
  out.report = nehari_report(out.fields, params, subset);
  return out;
}

AggregateProjection project_aggregate(const FieldVector& u, const ProblemParams& params) {
  const InteractionData data = interaction_data(u, params, full_subset(params.d));
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < params.d; ++i) {
    num += data.norms[i];
    for (std::size_t j = 0; j < params.d; ++j) den += data.mixed[i][j];
  }
  if (!(den > 0.0)) {
    throw NumericalFailure("interaction sum " + std::to_string(den) +
                           " is not positive; the vector cannot be scaled onto the aggregate set");
  }
  if (!(num > 0.0)) throw NumericalFailure("quadratic part is not positive");
  const double t = std::pow(num / den, 0.25);
  std::vector<ComponentField> comps;
  comps.reserve(params.d);
  for (const auto& c : u.components()) comps.push_back(c.scaled(t));
  return {t, FieldVector(std::move(comps))};
}

double projection_lattice_excess(const InteractionData& data, const std::vector<double>& t,
                                 double spread) {
  const std::size_t q = t.size();
  const double base = scaling_objective(data, t);
  double best = -std::numeric_limits<double>::infinity();
  std::size_t total = 1;
  for (std::size_t i = 0; i < q; ++i) total *= 5;
  std::vector<double> trial(q);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    bool centre = true;
    for (std::size_t i = 0; i < q; ++i) {
      const int k = static_cast<int>(c % 5) - 2;
      c /= 5;
      centre = centre && k == 0;
      trial[i] = t[i] * (1.0 + spread * k);
    }
    if (centre) continue;
    best = std::max(best, scaling_objective(data, trial));
  }
  return best - base;
}

std::vector<double> lagrange_witness(const InteractionData& data) {
  const NehariReport rep = nehari_report(data);
  const Eigen::MatrixXd a = to_eigen(rep.a.a);
  Eigen::VectorXd g(static_cast<Eigen::Index>(rep.residuals.size()));
  for (std::size_t i = 0; i < rep.residuals.size(); ++i) g(i) = -rep.residuals[i];
  const Eigen::VectorXd mu = a.partialPivLu().solve(g);
  return std::vector<double>(mu.data(), mu.data() + mu.size());
}

}  // namespace critlab
