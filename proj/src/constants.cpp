#include "critlab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "critlab/bubbles.hpp"
#include "critlab/error.hpp"
#include "critlab/radial_domain.hpp"

namespace critlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson on [0, b] with an even number of panels.
template <class F>
double simpson(F&& f, double b, std::size_t panels) {
  const double h = b / static_cast<double>(panels);
  double s = f(0.0) + f(b);
  for (std::size_t k = 1; k < panels; ++k) {
    s += (k % 2 == 1 ? 4.0 : 2.0) * f(static_cast<double>(k) * h);
  }
  return s * h / 3.0;
}

double compute_sobolev_power() {
  // |grad U_1|^2 4 pi r^2 = 4 pi sqrt(3) r^4 / (1 + r^2)^3; the tail beyond
  // r_max follows from r^4/(1+r^2)^3 = r^-2 - 3 r^-4 + 6 r^-6 - 10 r^-8 + ...
  constexpr double r_max = 400.0;
  const double body = simpson(
      [](double r) {
        const double q = 1.0 + r * r;
        return r * r * r * r / (q * q * q);
      },
      r_max, 1u << 20);
  const double ri = 1.0 / r_max;
  const double tail = ri - std::pow(ri, 3) + 1.2 * std::pow(ri, 5) - (10.0 / 7.0) * std::pow(ri, 7);
  return 4.0 * kPi * std::sqrt(3.0) * (body + tail);
}

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw InvalidInput(std::string(field) + " must be finite");
}

}  // namespace

void ProblemParams::validate() const {
  if (d == 0) throw InvalidInput("params.d must be at least 1");
  if (lambdas.size() != d) {
    throw InvalidInput("params.lambdas has " + std::to_string(lambdas.size()) +
                       " entries, expected d = " + std::to_string(d));
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidInput("params.radius must be positive");
  if (beta.size() != d) throw InvalidInput("params.beta must have d rows");
  for (std::size_t i = 0; i < d; ++i) {
    require_finite(lambdas[i], "params.lambdas");
    if (beta[i].size() != d) throw InvalidInput("params.beta must be a d x d matrix");
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      require_finite(beta[i][j], "params.beta");
      if (beta[i][j] != beta[j][i]) {
        throw InvalidInput("params.beta is not symmetric at (" + std::to_string(i) + "," +
                           std::to_string(j) + ")");
      }
    }
    if (!(beta[i][i] > 0.0)) {
      throw InvalidInput("params.beta diagonal entry " + std::to_string(i) + " must be positive");
    }
  }
}

bool ProblemParams::cooperative() const {
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j && beta[i][j] < 0.0) return false;
  return true;
}

bool ProblemParams::competitive() const {
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j && beta[i][j] > 0.0) return false;
  return true;
}

ProblemParams make_params(std::vector<double> lambdas, Matrix beta, double radius) {
  ProblemParams p;
  p.d = lambdas.size();
  p.lambdas = std::move(lambdas);
  p.beta = std::move(beta);
  p.radius = radius;
  p.validate();
  return p;
}

AdmissibilityReport check_admissible(const ProblemParams& params) {
  AdmissibilityReport rep;
  rep.lambda1 = kPi * kPi / (params.radius * params.radius);
  rep.lambda_star = rep.lambda1 / 4.0;
  rep.window_low = -rep.lambda1;
  rep.window_high = -rep.lambda_star;
  rep.admissible = !params.lambdas.empty();
  for (double lambda : params.lambdas) {
    ComponentWindow w;
    w.lambda = lambda;
    w.lower_margin = lambda + rep.lambda1;
    w.upper_margin = -rep.lambda_star - lambda;
    w.admissible = w.lower_margin > 0.0 && w.upper_margin > 0.0;
    rep.admissible = rep.admissible && w.admissible;
    rep.components.push_back(w);
  }
  return rep;
}

double sobolev_tilde_power() {
  static const double value = compute_sobolev_power();
  return value;
}

double sobolev_tilde() { return std::cbrt(sobolev_tilde_power() * sobolev_tilde_power()); }

LambdaBounds lambda_bounds(double radius, std::size_t intervals) {
  if (!(radius > 0.0)) throw InvalidInput("radius must be positive");
  LambdaBounds b;
  b.intervals = intervals;
  b.lambda1 = first_dirichlet_eigenpair(make_grid(radius, intervals)).eigenvalue;
  b.lambda1_closed_form = kPi * kPi / (radius * radius);
  b.lambda_star = b.lambda1_closed_form / 4.0;
  return b;
}

ThresholdConstants compute_constants(const ProblemParams& params, const std::vector<double>& m,
                                 double s_quotient) {
  params.validate();
  const auto adm = check_admissible(params);
  if (!adm.admissible) {
    for (std::size_t i = 0; i < params.d; ++i) {
      if (!adm.components[i].admissible) {
        throw InvalidInput("params.lambdas[" + std::to_string(i) + "] = " +
                           std::to_string(params.lambdas[i]) + " lies outside (" +
                           std::to_string(adm.window_low) + ", " + std::to_string(adm.window_high) +
                           ")");
      }
    }
  }
  const std::size_t d = params.d;
  if (m.size() != d) throw InvalidInput("need one single-equation level per component");
  for (double mi : m) {
    if (!(mi > 0.0)) throw InvalidInput("single-equation levels must be positive");
  }
  if (!(s_quotient > 0.0)) throw InvalidInput("quotient constant must be positive");

  ThresholdConstants c;
  c.s_tilde = sobolev_tilde();
  const double st32 = sobolev_tilde_power();
  const double st3 = st32 * st32;
  const double s = s_quotient;
  c.s_quotient = s;
  c.lambda1 = adm.lambda1;
  c.lambda_star = adm.lambda_star;
  c.m = m;

  double inv_sqrt_beta_max = 0.0;
  double beta_max = 0.0;
  double min_sqrt_bm = std::numeric_limits<double>::infinity();
  double sum_sqrt_m_over_b = 0.0;
  double sum_sqrt_3m_over_b = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double b = params.beta[i][i];
    inv_sqrt_beta_max = std::max(inv_sqrt_beta_max, 1.0 / std::sqrt(b));
    beta_max = std::max(beta_max, b);
    min_sqrt_bm = std::min(min_sqrt_bm, std::sqrt(b * m[i]));
    sum_sqrt_m_over_b += std::sqrt(m[i] / b);
    sum_sqrt_3m_over_b += std::sqrt(3.0 * m[i] / b);
  }

  c.cbar = static_cast<double>(d) / 3.0 * inv_sqrt_beta_max * st32;
  const double six_cbar = 6.0 * c.cbar;
  c.k1 = 7.0 * s * s * s / (12.0 * six_cbar * six_cbar);
  const double ratio = six_cbar / s;
  c.c2 = ratio * ratio * ratio;
  c.c1 = std::pow(s / (static_cast<double>(d) * std::max(c.k1, beta_max) * std::pow(ratio, 1.5)), 6.0);
  c.k2 = min_sqrt_bm / (2.0 * sum_sqrt_m_over_b);

  const double k3_b = s * s * s / (4.0 * six_cbar * six_cbar);
  const double k3_c = std::pow(s, 2.5) * std::cbrt(c.c1) /
                      (4.0 * std::pow(six_cbar, 1.5) * sum_sqrt_3m_over_b);
  const double k3_d = (std::sqrt(3.0) / 2.0) * min_sqrt_bm / (sum_sqrt_3m_over_b + std::pow(ratio, 1.5));
  c.k3 = std::min({c.k1, k3_b, k3_c, k3_d});

  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d; ++i) {
    gap = std::min(gap, st3 / params.beta[i][i] - 9.0 * m[i] * m[i]);
  }
  c.delta = 0.5 * gap;
  if (!(c.delta > 0.0)) {
    throw NumericalFailure("delta = " + std::to_string(c.delta) +
                           " is not positive; some m_i reaches the single-bubble level");
  }
  c.delta_consistency = std::numeric_limits<double>::infinity();
  c.k4 = std::numeric_limits<double>::infinity();
  c.c3 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d; ++i) {
    const double b = params.beta[i][i];
    c.delta_consistency = std::min(c.delta_consistency, st3 / b - c.delta - 9.0 * m[i] * m[i]);
    c.k4 = std::min(c.k4, b * s * s * s * c.delta / (six_cbar * six_cbar * st3));
    c.c3 = std::min(c.c3, std::pow(s / b, 1.5));
  }
  c.k = std::min({c.k1, c.k2, c.k3, c.k4});

  c.p_max = pmax(params.beta).value;
  c.b_limit = st32 / (3.0 * std::sqrt(c.p_max));
  return c;
}

}  // namespace critlab
