#include <cmath>
#include <random>

#include "critlab/bubbles.hpp"
#include "critlab/error.hpp"
#include "critlab/solver.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace critlab;

namespace {
constexpr double kPi2 = oracle::pi * oracle::pi;
constexpr double kHalf = -0.5 * kPi2;

ProblemParams two(double b, double lam = kHalf) { return make_params({lam, lam}, {{1.0, b}, {b, 1.0}}); }

const SolveResult& reference_single() {
  static const SolveResult r = solve_single(make_params({kHalf}, {{1.0}}), 0, SolveConfig{});
  return r;
}

ComponentField smooth(const GridPtr& g, double a, double c) {
  return ComponentField::sample(g, [=](double r) { return c * std::exp(-a * r * r) * std::cos(0.5 * oracle::pi * r); });
}
}  // namespace

TEST_CASE("energy of simple vectors") {
  const auto g = make_grid(1.0, 1024);
  const auto p = two(0.0);
  const FieldVector zero(g, 2);
  CHECK(energy(zero, p) == 0.0);
  const auto u = smooth(g, 1.0, 1.0);
  const FieldVector v({u, ComponentField(g)});
  const double expected = 0.5 * h1_inner(u, u, kHalf) - lp_mixed(u, u, 3.0) / 6.0;
  CHECK(energy(v, p) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(energy(v, p, {0}) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(energy(v, p, {1}) == 0.0);
  const FieldVector w({u, u});
  CHECK(energy(w, two(0.5)) == doctest::Approx(2.0 * expected - lp_mixed(u, u, 3.0) / 6.0).epsilon(1e-13));
}

TEST_CASE("gradient matches central differences with second order") {
  const auto g = make_grid(1.0, 512);
  const auto p = make_params({kHalf, -0.6 * kPi2}, {{1.0, 0.3}, {0.3, 2.0}});
  const FieldVector u({smooth(g, 1.0, 1.2), smooth(g, 3.0, 0.8)});
  const FieldVector v({smooth(g, 0.5, 0.3), smooth(g, 2.0, -0.2)});
  const FieldVector grad = gradient(u, p);
  std::vector<double> kv(g->size());
  double exact = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    g->apply_stiffness(v[i].values(), kv);
    for (std::size_t k = 0; k + 1 < g->size(); ++k) exact += grad[i][k] * kv[k];
  }
  std::vector<double> steps, errors;
  for (double t : {0.04, 0.02, 0.01}) {
    auto shifted = [&](double s) {
      std::vector<ComponentField> c;
      for (std::size_t i = 0; i < 2; ++i) {
        std::vector<double> x(u[i].values().begin(), u[i].values().end());
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += s * v[i][k];
        c.emplace_back(g, std::move(x));
      }
      return energy(FieldVector(std::move(c)), p);
    };
    steps.push_back(t);
    errors.push_back(std::abs((shifted(t) - shifted(-t)) / (2.0 * t) - exact));
  }
  CHECK(oracle::loglog_slope(steps, errors) > 1.8);
}

TEST_CASE("single-equation ground state") {
  const auto& r = reference_single();
  CHECK(r.converged);
  CHECK(r.kind == LevelKind::single);
  CHECK(r.level == doctest::Approx(3.33544).epsilon(1e-4));
  CHECK(r.quotient == doctest::Approx(4.64354).epsilon(1e-4));
  CHECK(r.level < oracle::sobolev_power_closed() / 3.0);
  CHECK(r.level == doctest::Approx(std::pow(r.quotient, 1.5) / 3.0).epsilon(1e-8));
  CHECK_FALSE(r.diagnostics.any());
  for (std::size_t k = 1; k < r.energy_history.size(); ++k)
    CHECK(r.energy_history[k] <= r.energy_history[k - 1] * (1.0 + 1e-12));
  for (double x : r.fields[0].values()) CHECK(x >= 0.0);
}

TEST_CASE("single level scales as beta^{-1/2} and depends only on its own data") {
  const auto scaled = solve_single(make_params({kHalf}, {{4.0}}), 0, SolveConfig{});
  CHECK(scaled.level == doctest::Approx(reference_single().level / 2.0).epsilon(1e-6));
  CHECK(scaled.quotient == doctest::Approx(reference_single().quotient).epsilon(1e-6));
  const auto in_pair = solve_single(two(-0.7), 1, SolveConfig{});
  CHECK(in_pair.level == doctest::Approx(reference_single().level).epsilon(1e-8));
}

TEST_CASE("single level is stable under refinement and increases with lambda") {
  SolveConfig fine;
  fine.intervals = 4096;
  const auto r = solve_single(make_params({kHalf}, {{1.0}}), 0, fine);
  CHECK(r.level == doctest::Approx(reference_single().level).epsilon(1e-3));
  const auto higher = solve_single(make_params({-0.4 * kPi2}, {{1.0}}), 0, SolveConfig{});
  CHECK(higher.level > reference_single().level);
}

TEST_CASE("one-component Nehari level equals the single level") {
  const auto p = make_params({kHalf}, {{1.0}});
  const auto r = minimize_on_N(p, {0}, SolveConfig{});
  CHECK(r.level == doctest::Approx(reference_single().level).epsilon(1e-6));
}

TEST_CASE("weak cooperation lowers the level below the sum") {
  const double m = reference_single().level;
  const auto r = minimize_on_N(two(0.01), {0, 1}, SolveConfig{});
  CHECK(r.converged);
  CHECK(r.regime == "cooperative");
  CHECK(r.level <= 2.0 * m + 1e-6);
  CHECK(r.level > m);
  CHECK(r.nehari.relative_residual <= 1e-8);
  CHECK(r.nehari.dominance_margin > 0.0);
  // Level identity on the Nehari set.
  double norms = 0.0;
  for (std::size_t i = 0; i < 2; ++i) norms += h1_inner(r.fields[i], r.fields[i], kHalf);
  CHECK(r.level == doctest::Approx(norms / 3.0).epsilon(1e-8));
  CHECK(r.level == doctest::Approx(energy(r.fields, two(0.01))).epsilon(1e-12));
  // Constrained minimizers on the Nehari set are free critical points.
  CHECK(r.gradient_norm <= 1e-6);
}

TEST_CASE("competition keeps the level above the sum of single levels") {
  const double lam = -0.7 * kPi2;
  const auto single = solve_single(make_params({lam}, {{1.0}}), 0, SolveConfig{});
  const auto r = minimize_on_N(two(-1.0, lam), {0, 1}, SolveConfig{});
  CHECK(r.regime == "competitive");
  CHECK(r.level >= 2.0 * single.level - 1e-6);
  CHECK(r.level < 2.0 * single.level + oracle::sobolev_power_closed() / 3.0);
  CHECK_FALSE(r.semitrivial);
}

TEST_CASE("aggregate minimum on the uncoupled system is semitrivial") {
  const auto r = minimize_on_M(two(0.0), SolveConfig{});
  CHECK(r.kind == LevelKind::aggregate);
  CHECK(r.semitrivial);
  CHECK(r.level == doctest::Approx(reference_single().level).epsilon(1e-4));
}

TEST_CASE("concentration detection") {
  const auto g = make_grid(1.0, 4096);
  const double h = g->spacing();
  const auto wide = detect_concentration(FieldVector({cutoff_test_field(20.0 * h, g)}));
  CHECK(wide.mesh_ratio[0] == doctest::Approx(20.0).epsilon(0.1));
  CHECK_FALSE(wide.any());
  const auto narrow = detect_concentration(FieldVector({cutoff_test_field(2.0 * h, g)}));
  CHECK(narrow.any());
  const auto eig = first_dirichlet_eigenpair(g);
  CHECK_FALSE(detect_concentration(FieldVector({eig.eigenfunction})).any());
}

TEST_CASE("results are reproducible") {
  const auto a = minimize_on_N(two(0.05), {0, 1}, SolveConfig{});
  const auto b = minimize_on_N(two(0.05), {0, 1}, SolveConfig{});
  CHECK(a.level == b.level);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("coupling regime labels") {
  CHECK(coupling_regime(two(0.1)) == "cooperative");
  CHECK(coupling_regime(two(-0.1)) == "competitive");
  const auto mixed = make_params({kHalf, kHalf, kHalf}, {{1.0, 0.1, -0.1}, {0.1, 1.0, 0.0}, {-0.1, 0.0, 1.0}});
  CHECK(coupling_regime(mixed) == "outside proven regime");
}

TEST_CASE("solver configuration validation") {
  SolveConfig c;
  CHECK_NOTHROW(c.validate());
  c.intervals = 1;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c = SolveConfig{};
  c.init = "spiral";
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c = SolveConfig{};
  c.gradient_tolerance = -1.0;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  CHECK_THROWS_AS(solve_single(make_params({kHalf}, {{1.0}}), 3, SolveConfig{}), InvalidInput);
}
