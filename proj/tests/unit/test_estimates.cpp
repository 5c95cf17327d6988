#include <cmath>

#include "critlab/error.hpp"
#include "critlab/estimates.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace critlab;

namespace {
constexpr double kPi2 = oracle::pi * oracle::pi;
constexpr double kHalf = -0.5 * kPi2;

ProblemParams two(double b, double lam = kHalf) { return make_params({lam, lam}, {{1.0, b}, {b, 1.0}}); }

void check_invariant(const EstimateReport& r) {
  CAPTURE(r.name);
  CHECK(r.pass == (r.margin > r.tolerance));
  CHECK(!std::isnan(r.get("raw_margin")));
  if (!std::isnan(r.margin)) CHECK(r.margin == doctest::Approx(r.rhs - r.lhs));
}

double threshold_k(double lam = kHalf) {
  LevelOracle o(two(0.0, lam), SolveConfig{});
  return o.constants().k;
}
}  // namespace

TEST_CASE("Cbar bound on the uncoupled pair") {
  LevelOracle o(two(0.0), SolveConfig{});
  const auto r = check_cbar(o);
  check_invariant(r);
  CHECK(r.pass);
  CHECK(r.rhs == doctest::Approx(2.0 / 3.0 * oracle::sobolev_power_closed()).epsilon(1e-6));
  CHECK(r.lhs == doctest::Approx(2.0 * o.single(0).level).epsilon(1e-6));
  CHECK(r.get("disjoint_test_energy") < r.rhs);
}

TEST_CASE("sum of single levels bounds the weakly cooperative level") {
  LevelOracle o(two(0.01), SolveConfig{});
  const auto r = check_sum_m(o);
  check_invariant(r);
  CHECK(r.pass);
  CHECK(r.lhs <= r.rhs);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(r.get("gram_margin_" + std::to_string(i)) >= r.get("gram_bound_" + std::to_string(i)));
  CHECK(r.get("projected_energy") <= r.rhs + 1e-9);
  LevelOracle strong(two(0.5), SolveConfig{});
  CHECK_THROWS_AS(check_sum_m(strong), InvalidInput);
}

TEST_CASE("subadditivity below K3 and its chain with the sum bound") {
  const double k = threshold_k();
  LevelOracle o(two(0.9 * k), SolveConfig{});
  const auto sub = check_subadditivity(o, {0, 1}, {0});
  check_invariant(sub);
  CHECK(sub.pass);
  CHECK(sub.get("mixed_dominance_margin") > 0.0);
  const auto sum = check_sum_m(o);
  CHECK(sub.lhs == sum.lhs);
  CHECK(sub.rhs == doctest::Approx(sum.rhs).epsilon(1e-12));
  LevelOracle over(two(2.0 * k), SolveConfig{});
  CHECK_THROWS_AS(check_subadditivity(over, {0, 1}, {0}), InvalidInput);
  CHECK_THROWS_AS(check_subadditivity(o, {0, 1}, {0, 1}), InvalidInput);
}

TEST_CASE("A below B for the uncoupled pair") {
  LevelOracle o(two(0.0), SolveConfig{});
  const auto r = check_A_lt_B(o);
  check_invariant(r);
  CHECK(r.pass);
  CHECK(r.rhs == doctest::Approx(oracle::sobolev_power_closed() / 3.0).epsilon(1e-6));
  CHECK(r.get("gap_slope") == doctest::Approx(r.get("gap_slope_predicted")).epsilon(0.05));
  LevelOracle comp(two(-0.5), SolveConfig{});
  CHECK_THROWS_AS(check_A_lt_B(comp), InvalidInput);
}

TEST_CASE("semitrivial regime below the coupling threshold") {
  const auto p = two(0.5);
  CHECK(semitrivial_threshold(p) == doctest::Approx(std::sqrt(2.0)));
  CHECK(semitrivial_threshold(make_params({kHalf, kHalf, kHalf}, {{1.0, 0, 0}, {0, 4.0, 0}, {0, 0, 1.0}})) ==
        doctest::Approx(2.0));
  LevelOracle o(p, SolveConfig{});
  const auto r = check_semitrivial(o);
  check_invariant(r);
  CHECK(r.pass);
  CHECK(r.get("A_semitrivial") == 1.0);
  CHECK(r.get("chain_ratio_min") > 1.0);
  LevelOracle over(two(2.0), SolveConfig{});
  CHECK_THROWS_AS(check_semitrivial(over), InvalidInput);
}

TEST_CASE("competitive strict estimate: resolved minimizer passes") {
  LevelOracle o(two(-1.0, -0.7 * kPi2), SolveConfig{});
  const auto r = check_competitive(o);
  check_invariant(r);
  CHECK(r.pass);
  CHECK(r.get("min_relative_margin") >= kStrictMargin);
  CHECK(r.get("splitting_bound_holds") == 1.0);
}

TEST_CASE("competitive strict estimate: a concentrated minimizer is not certified") {
  LevelOracle o(two(-1.0), SolveConfig{});
  const auto r = check_competitive(o);
  check_invariant(r);
  CHECK_FALSE(r.pass);
  CHECK(std::isnan(r.margin));
  CHECK(r.get("raw_margin") > 0.0);
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("competitive check refuses more than four components") {
  std::vector<double> lam(5, kHalf);
  Matrix b(5, std::vector<double>(5, -0.1));
  for (std::size_t i = 0; i < 5; ++i) b[i][i] = 1.0;
  LevelOracle o(make_params(lam, b), SolveConfig{});
  CHECK_THROWS_AS(check_competitive(o), InvalidInput);
}

TEST_CASE("reports are bit-for-bit reproducible") {
  LevelOracle a(two(0.01), SolveConfig{}), b(two(0.01), SolveConfig{});
  const auto ra = check_sum_m(a), rb = check_sum_m(b);
  CHECK(ra.lhs == rb.lhs);
  CHECK(ra.rhs == rb.rhs);
  CHECK(ra.details == rb.details);
}

TEST_CASE("margins are stable under grid refinement") {
  SolveConfig fine;
  fine.intervals = 4096;
  LevelOracle coarse(two(0.01), SolveConfig{}), refined(two(0.01), fine);
  const double mc = check_sum_m(coarse).margin, mf = check_sum_m(refined).margin;
  CHECK(std::abs(mf - mc) <= 0.2 * std::abs(mc));
}

TEST_CASE("check registry") {
  const auto names = check_names();
  CHECK(names.size() == 6);
  LevelOracle o(two(0.0), SolveConfig{});
  CHECK(run_check("cbar", o).name == "cbar");
  CHECK_THROWS_AS(run_check("nope", o), InvalidInput);
}
