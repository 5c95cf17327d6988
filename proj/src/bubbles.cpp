#include "critlab/bubbles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "critlab/error.hpp"

namespace critlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Least squares for y = a x + b x^2; returns a.
double fit_linear_quadratic(const std::vector<double>& x, const std::vector<double>& y) {
  double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double p = x[k], q = x[k] * x[k];
    s11 += p * p;
    s12 += p * q;
    s22 += q * q;
    t1 += p * y[k];
    t2 += q * y[k];
  }
  const double det = s11 * s22 - s12 * s12;
  if (x.size() < 2 || std::abs(det) <= 0.0) return x.empty() ? 0.0 : t1 / s11;
  return (t1 * s22 - t2 * s12) / det;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double coupling_form(const Matrix& beta, const std::vector<double>& x) {
  double p = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = std::abs(x[i]);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double xj = std::abs(x[j]);
      p += beta[i][j] * xi * xi * xi * xj * xj * xj;
    }
  }
  return p;
}

void normalize(std::vector<double>& x) {
  double n = 0.0;
  for (double v : x) n += v * v;
  n = std::sqrt(n);
  for (double& v : x) v = std::abs(v) / n;
}

// Projected gradient ascent of the coupling form on the nonnegative part of
// the unit sphere.
std::vector<double> ascend(const Matrix& beta, std::vector<double> x) {
  const std::size_t d = x.size();
  normalize(x);
  double value = coupling_form(beta, x);
  double step = 0.1;
  std::vector<double> g(d), trial(d);
  for (int it = 0; it < 5000 && step > 1e-16; ++it) {
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += beta[i][j] * x[j] * x[j] * x[j];
      g[i] = 6.0 * x[i] * x[i] * s;
    }
    // Tangential part only.
    double radial = 0.0;
    for (std::size_t i = 0; i < d; ++i) radial += g[i] * x[i];
    double gnorm = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      g[i] -= radial * x[i];
      gnorm += g[i] * g[i];
    }
    if (std::sqrt(gnorm) < 1e-15 * std::max(1.0, std::abs(value))) break;
    bool moved = false;
    while (step > 1e-16) {
      for (std::size_t i = 0; i < d; ++i) trial[i] = x[i] + step * g[i];
      normalize(trial);
      const double tv = coupling_form(beta, trial);
      if (tv > value) {
        x = trial;
        value = tv;
        step *= 2.0;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return x;
}

}  // namespace

double bubble_value(double epsilon, double r) {
  if (!(epsilon > 0.0)) throw InvalidInput("bubble scale must be positive");
  return std::pow(3.0 * epsilon * epsilon, 0.25) / std::sqrt(epsilon * epsilon + r * r);
}

ComponentField bubble_field(double epsilon, GridPtr grid) {
  if (!(epsilon > 0.0)) throw InvalidInput("bubble scale must be positive");
  return ComponentField::sample(std::move(grid), [epsilon](double r) { return bubble_value(epsilon, r); },
                                false);
}

ComponentField cutoff_test_field(double epsilon, GridPtr grid) {
  if (!(epsilon > 0.0)) throw InvalidInput("bubble scale must be positive");
  const double radius = grid->radius();
  return ComponentField::sample(
      std::move(grid),
      [epsilon, radius](double r) {
        return bubble_value(epsilon, r) * std::cos(kPi * r / (2.0 * radius));
      },
      true);
}

WholeSpaceIntegrals bubble_whole_space(double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidInput("bubble scale must be positive");
  // Midpoint rule in r on [0, r_max] plus the algebraic tails; the panel
  // count scales with r_max / eps so both ends stay resolved.
  const double e2 = epsilon * epsilon;
  const double r_max = 400.0 * epsilon;
  const std::size_t panels = 1u << 21;
  const double h = r_max / static_cast<double>(panels);
  double grad = 0.0, l6 = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double r = (static_cast<double>(k) + 0.5) * h;
    const double q = e2 + r * r;
    grad += r * r * r * r / (q * q * q);
    l6 += r * r / (q * q * q);
  }
  const double ri = 1.0 / r_max;
  const double grad_tail =
      ri - e2 * std::pow(ri, 3) + 1.2 * e2 * e2 * std::pow(ri, 5) - (10.0 / 7.0) * e2 * e2 * e2 * std::pow(ri, 7);
  const double l6_tail = std::pow(ri, 3) / 3.0 - 0.6 * e2 * std::pow(ri, 5) + (6.0 / 7.0) * e2 * e2 * std::pow(ri, 7);
  const double c = 4.0 * kPi * std::sqrt(3.0);
  return {c * epsilon * (grad * h + grad_tail), 3.0 * c * epsilon * e2 * (l6 * h + l6_tail)};
}

ExpansionTable expansion_report(const std::vector<double>& epsilons, const GridPtr& grid) {
  if (epsilons.empty()) throw InvalidInput("expansion needs at least one epsilon");
  std::vector<double> eps(epsilons);
  std::sort(eps.begin(), eps.end(), std::greater<>());
  const double h = grid->spacing();
  for (double e : eps) {
    if (!(e >= 10.0 * h)) {
      throw InvalidInput("epsilon " + std::to_string(e) + " is below 10 grid spacings (h = " +
                         std::to_string(h) + "); refine the grid");
    }
  }
  ExpansionTable table;
  table.reference = sobolev_tilde_power();
  std::vector<double> grad_dev, l2s, l6_dev;
  for (double e : eps) {
    const ComponentField w = cutoff_test_field(e, grid);
    ExpansionRow row;
    row.epsilon = e;
    row.grad_energy = dirichlet_energy(w);
    row.l6 = lp_mixed(w, w, 3.0);
    row.l2 = lp_mixed(w, w, 1.0);
    row.l3 = lp_mixed(w, w, 1.5);
    row.l3_log_ratio = row.l3 / (std::pow(e, 1.5) * std::abs(std::log(e)));
    grad_dev.push_back(row.grad_energy - table.reference);
    l2s.push_back(row.l2);
    l6_dev.push_back(std::abs(row.l6 - table.reference));
    table.rows.push_back(row);
  }
  table.grad_slope = fit_linear_quadratic(eps, grad_dev);
  table.l2_slope = fit_linear_quadratic(eps, l2s);
  if (eps.size() >= 2) table.l6_order = log_log_slope(eps, l6_dev);
  for (std::size_t k = 1; k < eps.size(); ++k) {
    if (std::abs(eps[k] - 0.5 * eps[k - 1]) > 1e-9 * eps[k]) continue;
    table.l6_halving_factors.push_back(l6_dev[k - 1] / l6_dev[k]);
    const double a = table.rows[k - 1].l3_log_ratio, b = table.rows[k].l3_log_ratio;
    table.l3_ratio_variation = std::max(table.l3_ratio_variation, std::abs(b - a) / a);
  }
  return table;
}

PmaxResult pmax(const Matrix& beta, std::uint64_t seed) {
  const std::size_t d = beta.size();
  if (d == 0) throw InvalidInput("coupling matrix is empty");
  for (std::size_t i = 0; i < d; ++i) {
    if (beta[i].size() != d) throw InvalidInput("coupling matrix must be square");
    if (!(beta[i][i] > 0.0)) throw InvalidInput("coupling matrix needs a positive diagonal");
    for (std::size_t j = 0; j < d; ++j) {
      if (beta[i][j] != beta[j][i]) throw InvalidInput("coupling matrix must be symmetric");
    }
  }
  PmaxResult res;
  if (d == 1) {
    res.value = beta[0][0];
    res.argmax = {1.0};
    res.certified = true;
    res.certificate = beta[0][0];
    res.starts = 1;
    return res;
  }

  std::vector<std::vector<double>> starts;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> e(d, 1e-3);
    e[i] = 1.0;
    starts.push_back(e);
  }
  starts.emplace_back(d, 1.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t k = 0; k < 8 + 4 * d; ++k) {
    std::vector<double> x(d);
    for (double& v : x) v = unif(rng) + 1e-6;
    starts.push_back(x);
  }

  auto consider = [&](std::vector<double> x) {
    x = ascend(beta, std::move(x));
    const double v = coupling_form(beta, x);
    if (v > res.value) {
      res.value = v;
      res.argmax = x;
    }
  };
  for (auto& s : starts) consider(s);
  res.starts = static_cast<int>(starts.size());

  if (d <= 3) {
    std::vector<double> best_point;
    double best = -std::numeric_limits<double>::infinity();
    if (d == 2) {
      const std::size_t m = 1'000'000;
      for (std::size_t k = 0; k <= m; ++k) {
        const double th = 0.5 * kPi * static_cast<double>(k) / static_cast<double>(m);
        std::vector<double> x = {std::cos(th), std::sin(th)};
        const double v = coupling_form(beta, x);
        if (v > best) {
          best = v;
          best_point = x;
        }
      }
    } else {
      const std::size_t m = 1000;
      for (std::size_t a = 0; a <= m; ++a) {
        const double th = 0.5 * kPi * static_cast<double>(a) / static_cast<double>(m);
        for (std::size_t b = 0; b <= m; ++b) {
          const double ph = 0.5 * kPi * static_cast<double>(b) / static_cast<double>(m);
          std::vector<double> x = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
          const double v = coupling_form(beta, x);
          if (v > best) {
            best = v;
            best_point = x;
          }
        }
      }
    }
    res.certified = true;
    res.certificate = best;
    // A grid point that beats every start seeds one more ascent.
    if (best > res.value) consider(best_point);
  }
  return res;
}

double limit_level(const Matrix& beta) {
  return sobolev_tilde_power() / (3.0 * std::sqrt(pmax(beta).value));
}

}  // namespace critlab
