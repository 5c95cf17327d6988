#pragma once

// Radial discretization of the ball B_R in R^3.
//
// Nodes are uniform, r_k = k h for k = 0..n with h = R / n. Integrals of
// radial functions use trapezoid weights on f(r) r^2, scaled by 4 pi, so the
// origin carries zero weight. The Dirichlet energy uses one difference per
// cell with the midpoint value of r^2. The resulting stiffness matrix K and
// diagonal mass W give the discrete energy
//
//   ||u||_lambda^2 = u^T K u + lambda u^T W u,
//
// and every operator below is the exact derivative of that energy.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace critlab {

class RadialGrid {
 public:
  RadialGrid(double radius, std::size_t intervals);

  double radius() const { return radius_; }
  std::size_t intervals() const { return intervals_; }
  std::size_t size() const { return nodes_.size(); }
  double spacing() const { return spacing_; }

  std::span<const double> nodes() const { return nodes_; }
  /// Volume weights W_k, so that sum_k W_k f(r_k) ~ integral over the ball.
  std::span<const double> weights() const { return weights_; }
  /// Stiffness coefficient of cell [r_k, r_{k+1}]: 4 pi r_{k+1/2}^2 / h.
  std::span<const double> cell_coefficients() const { return cells_; }

  /// Solves K x = rhs on the free nodes 0..n-1 (x_n = 0). rhs_n is ignored.
  std::vector<double> solve_stiffness(std::span<const double> rhs) const;

  /// Solves (K + shift W) x = rhs on the free nodes (x_n = 0). The shift
  /// must keep the matrix positive definite (shift > -lambda1).
  std::vector<double> solve_shifted(std::span<const double> rhs, double shift) const;

  /// y = K x over all nodes (x_n is treated as given).
  void apply_stiffness(std::span<const double> x, std::span<double> y) const;

  bool same_as(const RadialGrid& other) const {
    return this == &other || (radius_ == other.radius_ && intervals_ == other.intervals_);
  }

 private:
  double radius_;
  std::size_t intervals_;
  double spacing_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> cells_;
  // Thomas factorization of K on the free nodes.
  std::vector<double> thomas_upper_;
  std::vector<double> thomas_pivot_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(double radius, std::size_t intervals);

/// A radial function sampled on a grid. Conforming fields satisfy the
/// Dirichlet condition: the value at r = R is exactly zero.
class ComponentField {
 public:
  ComponentField() = default;
  /// Zero field.
  explicit ComponentField(GridPtr grid);
  /// Takes samples as given; pins the last node to 0 when `conforming`.
  ComponentField(GridPtr grid, std::vector<double> values, bool conforming = true);

  static ComponentField sample(GridPtr grid, const std::function<double(double)>& f,
                               bool conforming = true);

  const GridPtr& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::size_t size() const { return values_.size(); }
  bool conforming() const { return conforming_; }
  bool is_zero() const;
  double max_abs() const;

  ComponentField scaled(double factor) const;
  ComponentField abs() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
  bool conforming_ = true;
};

/// Ordered d-tuple of component fields on one shared grid.
class FieldVector {
 public:
  FieldVector() = default;
  explicit FieldVector(std::vector<ComponentField> components);
  /// d zero components.
  FieldVector(GridPtr grid, std::size_t d);

  std::size_t dim() const { return components_.size(); }
  const GridPtr& grid() const { return components_.front().grid(); }
  const ComponentField& operator[](std::size_t i) const { return components_[i]; }
  ComponentField& operator[](std::size_t i) { return components_[i]; }
  const std::vector<ComponentField>& components() const { return components_; }

 private:
  std::vector<ComponentField> components_;
};

/// 4 pi sum_k w_k f(r_k) r_k^2.
double integrate(const ComponentField& f);

/// Discrete integral of (u' v' + lambda u v) over the ball.
double h1_inner(const ComponentField& u, const ComponentField& v, double lambda);

/// Discrete Dirichlet energy integral |grad u|^2.
double dirichlet_energy(const ComponentField& u);

/// Integral of |u|^p |v|^p.
double lp_mixed(const ComponentField& u, const ComponentField& v, double p);

/// Discrete -u'' - (2/r) u' + lambda u. The origin row uses the regular
/// limit -3 u''(0); the boundary node is returned as 0.
ComponentField apply_operator(const ComponentField& u, double lambda);

struct DirichletEigenpair {
  double eigenvalue = 0.0;
  ComponentField eigenfunction;  // normalized to unit L^2 norm
  int iterations = 0;
};

/// Smallest generalized eigenvalue of the pair (K, W) by inverse iteration.
DirichletEigenpair first_dirichlet_eigenpair(const GridPtr& grid);

void require_same_grid(const ComponentField& u, const ComponentField& v);

}  // namespace critlab
