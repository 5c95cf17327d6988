#include "critlab/radial_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "critlab/error.hpp"

namespace critlab {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}  // namespace

RadialGrid::RadialGrid(double radius, std::size_t intervals)
    : radius_(radius), intervals_(intervals) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidInput("grid radius must be positive, got " + std::to_string(radius));
  }
  if (intervals < 2) {
    throw InvalidInput("grid needs at least 2 intervals");
  }
  const std::size_t n = intervals;
  spacing_ = radius / static_cast<double>(n);
  const double h = spacing_;

  nodes_.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) nodes_[k] = static_cast<double>(k) * h;
  nodes_[n] = radius;

  weights_.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 0.5 * h : h;
    weights_[k] = kFourPi * w * nodes_[k] * nodes_[k];
  }

  cells_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * h;
    cells_[k] = kFourPi * mid * mid / h;
  }

  // K on free nodes 0..n-1: diag_k = c_{k-1} + c_k, off_k = -c_k.
  thomas_upper_.resize(n);
  thomas_pivot_.resize(n);
  double prev_upper = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double diag = (k > 0 ? cells_[k - 1] : 0.0) + cells_[k];
    const double lower = k > 0 ? -cells_[k - 1] : 0.0;
    const double pivot = diag - lower * prev_upper;
    thomas_pivot_[k] = pivot;
    const double upper = (k + 1 < n) ? -cells_[k] : 0.0;
    thomas_upper_[k] = upper / pivot;
    prev_upper = thomas_upper_[k];
  }
}

std::vector<double> RadialGrid::solve_stiffness(std::span<const double> rhs) const {
  const std::size_t n = intervals_;
  std::vector<double> x(n + 1, 0.0);
  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lower = k > 0 ? -cells_[k - 1] : 0.0;
    x[k] = (rhs[k] - lower * prev) / thomas_pivot_[k];
    prev = x[k];
  }
  for (std::size_t k = n - 1; k-- > 0;) x[k] -= thomas_upper_[k] * x[k + 1];
  return x;
}

std::vector<double> RadialGrid::solve_shifted(std::span<const double> rhs, double shift) const {
  if (shift == 0.0) return solve_stiffness(rhs);
  const std::size_t n = intervals_;
  std::vector<double> x(n + 1, 0.0);
  std::vector<double> upper(n);
  double prev_upper = 0.0, prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lower = k > 0 ? -cells_[k - 1] : 0.0;
    const double diag = (k > 0 ? cells_[k - 1] : 0.0) + cells_[k] + shift * weights_[k];
    const double pivot = diag - lower * prev_upper;
    if (!(pivot > 0.0)) throw NumericalFailure("shifted stiffness matrix is not positive definite");
    upper[k] = (k + 1 < n ? -cells_[k] : 0.0) / pivot;
    x[k] = (rhs[k] - lower * prev) / pivot;
    prev_upper = upper[k];
    prev = x[k];
  }
  for (std::size_t k = n - 1; k-- > 0;) x[k] -= upper[k] * x[k + 1];
  return x;
}

void RadialGrid::apply_stiffness(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = intervals_;
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double flux = cells_[k] * (x[k] - x[k + 1]);
    y[k] += flux;
    y[k + 1] -= flux;
  }
}

GridPtr make_grid(double radius, std::size_t intervals) {
  return std::make_shared<const RadialGrid>(radius, intervals);
}

ComponentField::ComponentField(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw InvalidInput("field needs a grid");
  values_.assign(grid_->size(), 0.0);
}

ComponentField::ComponentField(GridPtr grid, std::vector<double> values, bool conforming)
    : grid_(std::move(grid)), values_(std::move(values)), conforming_(conforming) {
  if (!grid_) throw InvalidInput("field needs a grid");
  if (values_.size() != grid_->size()) {
    throw InvalidInput("field has " + std::to_string(values_.size()) + " samples, grid has " +
                       std::to_string(grid_->size()) + " nodes");
  }
  if (conforming_) values_.back() = 0.0;
}

ComponentField ComponentField::sample(GridPtr grid, const std::function<double(double)>& f,
                                      bool conforming) {
  std::vector<double> v(grid->size());
  const auto r = grid->nodes();
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(r[k]);
  return ComponentField(std::move(grid), std::move(v), conforming);
}

bool ComponentField::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
}

double ComponentField::max_abs() const {
  double m = 0.0;
  for (double x : values_) m = std::max(m, std::abs(x));
  return m;
}

ComponentField ComponentField::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return ComponentField(grid_, std::move(v), conforming_);
}

ComponentField ComponentField::abs() const {
  std::vector<double> v(values_);
  for (double& x : v) x = std::abs(x);
  return ComponentField(grid_, std::move(v), conforming_);
}

FieldVector::FieldVector(std::vector<ComponentField> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw InvalidInput("field vector needs at least one component");
  for (const auto& c : components_) require_same_grid(components_.front(), c);
}

FieldVector::FieldVector(GridPtr grid, std::size_t d) {
  if (d == 0) throw InvalidInput("field vector needs at least one component");
  components_.reserve(d);
  for (std::size_t i = 0; i < d; ++i) components_.emplace_back(grid);
}

void require_same_grid(const ComponentField& u, const ComponentField& v) {
  if (!u.grid() || !v.grid() || !u.grid()->same_as(*v.grid())) {
    throw InvalidInput("fields live on different grids");
  }
}

double integrate(const ComponentField& f) {
  const auto w = f.grid()->weights();
  const auto v = f.values();
  double s = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) s += w[k] * v[k];
  return s;
}

double dirichlet_energy(const ComponentField& u) { return h1_inner(u, u, 0.0); }

double h1_inner(const ComponentField& u, const ComponentField& v, double lambda) {
  require_same_grid(u, v);
  const auto& grid = *u.grid();
  const auto c = grid.cell_coefficients();
  const auto w = grid.weights();
  const auto a = u.values();
  const auto b = v.values();
  double grad = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) grad += c[k] * (a[k + 1] - a[k]) * (b[k + 1] - b[k]);
  double mass = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) mass += w[k] * a[k] * b[k];
  return grad + lambda * mass;
}

double lp_mixed(const ComponentField& u, const ComponentField& v, double p) {
  require_same_grid(u, v);
  if (!(p > 0.0)) throw InvalidInput("lp_mixed exponent must be positive");
  const auto w = u.grid()->weights();
  const auto a = u.values();
  const auto b = v.values();
  double s = 0.0;
  if (p == 3.0) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double ab = std::abs(a[k] * b[k]);
      s += w[k] * ab * ab * ab;
    }
  } else {
    for (std::size_t k = 0; k < a.size(); ++k) {
      s += w[k] * std::pow(std::abs(a[k]), p) * std::pow(std::abs(b[k]), p);
    }
  }
  return s;
}

ComponentField apply_operator(const ComponentField& u, double lambda) {
  const auto& grid = *u.grid();
  const std::size_t n = grid.intervals();
  const double h = grid.spacing();
  const auto a = u.values();
  std::vector<double> ku(n + 1);
  grid.apply_stiffness(a, ku);
  const auto w = grid.weights();
  std::vector<double> out(n + 1, 0.0);
  out[0] = 6.0 * (a[0] - a[1]) / (h * h) + lambda * a[0];
  for (std::size_t k = 1; k < n; ++k) out[k] = ku[k] / w[k] + lambda * a[k];
  return ComponentField(u.grid(), std::move(out), true);
}

DirichletEigenpair first_dirichlet_eigenpair(const GridPtr& grid) {
  const std::size_t size = grid->size();
  const auto w = grid->weights();
  const auto r = grid->nodes();
  const double radius = grid->radius();
  // Start from a positive profile; the ground state is positive so the
  // overlap is nonzero.
  std::vector<double> x(size);
  for (std::size_t k = 0; k < size; ++k) x[k] = 1.0 - (r[k] / radius) * (r[k] / radius);
  x.back() = 0.0;

  std::vector<double> rhs(size), kx(size);
  double mu = 0.0;
  int it = 0;
  for (; it < 200; ++it) {
    for (std::size_t k = 0; k < size; ++k) rhs[k] = w[k] * x[k];
    std::vector<double> y = grid->solve_stiffness(rhs);
    double norm2 = 0.0;
    for (std::size_t k = 0; k < size; ++k) norm2 += w[k] * y[k] * y[k];
    const double scale = 1.0 / std::sqrt(norm2);
    for (double& v : y) v *= scale;
    grid->apply_stiffness(y, kx);
    double num = 0.0;
    for (std::size_t k = 0; k < size - 1; ++k) num += y[k] * kx[k];
    const double prev = mu;
    mu = num;  // W-norm of y is 1
    x = std::move(y);
    if (it > 3 && std::abs(mu - prev) <= 1e-15 * mu) break;
  }
  return {mu, ComponentField(grid, std::move(x), true), it + 1};
}

}  // namespace critlab
