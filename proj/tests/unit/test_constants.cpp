#include <chrono>
#include <cmath>

#include "critlab/constants.hpp"
#include "critlab/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace critlab;

namespace {
constexpr double kPi2 = oracle::pi * oracle::pi;
// Representative single-equation data at lambda = -pi^2 / 2, beta = 1, R = 1.
constexpr double kM = 3.3354;
constexpr double kQ = 4.6435;

ProblemParams two(double b) { return make_params({-0.5 * kPi2, -0.5 * kPi2}, {{1.0, b}, {b, 1.0}}); }
}  // namespace

TEST_CASE("Sobolev constant matches the closed form and an adaptive quadrature") {
  const double gradient = oracle::space_integral([](double r) {
    const double s = oracle::bubble_slope(1.0, r);
    return s * s;
  });
  const double sixth = oracle::space_integral([](double r) { return std::pow(oracle::bubble(1.0, r), 6); });
  CHECK(gradient == doctest::Approx(oracle::sobolev_power_closed()).epsilon(1e-10));
  CHECK(sixth == doctest::Approx(gradient).epsilon(1e-10));
  CHECK(sobolev_tilde_power() == doctest::Approx(gradient).epsilon(1e-6));
  CHECK(sobolev_tilde() == doctest::Approx(std::cbrt(gradient * gradient)).epsilon(1e-6));
  CHECK(sobolev_tilde() == doctest::Approx(5.4779).epsilon(1e-4));
}

TEST_CASE("lambda bounds come from the eigensolve and scale with the radius") {
  const auto b1 = lambda_bounds(1.0);
  CHECK(b1.lambda1 == doctest::Approx(kPi2).epsilon(1e-3));
  CHECK(b1.lambda1 != kPi2);
  CHECK(b1.lambda_star == doctest::Approx(kPi2 / 4.0).epsilon(1e-12));
  CHECK(b1.lambda_star / b1.lambda1_closed_form == 0.25);
  const auto b2 = lambda_bounds(2.0);
  CHECK(b2.lambda1 == doctest::Approx(kPi2 / 4.0).epsilon(1e-3));
  CHECK_THROWS_AS(lambda_bounds(-1.0), InvalidInput);
}

TEST_CASE("admissibility window verdicts") {
  auto one = [](double lam) { return check_admissible(make_params({lam}, {{1.0}})); };
  CHECK(one(-0.5 * kPi2).admissible);
  const auto high = one(-0.2 * kPi2);
  CHECK_FALSE(high.admissible);
  CHECK(high.components[0].upper_margin == doctest::Approx(-0.05 * kPi2));
  const auto low = one(-1.1 * kPi2);
  CHECK_FALSE(low.admissible);
  CHECK(low.components[0].lower_margin == doctest::Approx(-0.1 * kPi2));
  CHECK(high.window_low == doctest::Approx(-kPi2));
  CHECK(high.window_high == doctest::Approx(-kPi2 / 4.0));
}

TEST_CASE("params validation names the failing field") {
  CHECK_THROWS_WITH_AS(make_params({-1.0, -1.0}, {{1.0, 0.5}, {0.4, 1.0}}), doctest::Contains("params.beta"),
                       InvalidInput);
  CHECK_THROWS_WITH_AS(make_params({-1.0}, {{-1.0}}), doctest::Contains("params.beta"), InvalidInput);
  CHECK_THROWS_WITH_AS(make_params({-1.0}, {{1.0}}, 0.0), doctest::Contains("params.radius"), InvalidInput);
  CHECK_THROWS_WITH_AS(make_params({}, {}), doctest::Contains("params.d"), InvalidInput);
}

TEST_CASE("Cbar and K1 follow their formulas") {
  const auto c = compute_constants(two(0.0), {kM, kM}, kQ);
  const double st32 = oracle::sobolev_power_closed();
  CHECK(c.cbar == doctest::Approx(2.0 / 3.0 * st32).epsilon(1e-6));
  CHECK(c.k1 == doctest::Approx(7.0 * kQ * kQ * kQ / (12.0 * 36.0 * c.cbar * c.cbar)).epsilon(1e-12));
  CHECK(c.c2 == doctest::Approx(std::pow(6.0 * c.cbar / kQ, 3)).epsilon(1e-12));
  CHECK(c.c3 == doctest::Approx(std::pow(kQ, 1.5)).epsilon(1e-12));
  CHECK(c.c1 < c.c2);
  CHECK(c.k > 0.0);
  CHECK(c.k <= c.k1);
  CHECK(c.k <= c.k2);
  CHECK(c.k <= c.k3);
  CHECK(c.k <= c.k4);
  CHECK(c.delta > 0.0);
  CHECK(c.delta_consistency > 0.0);
  CHECK(c.lambda_star < c.lambda1);
  CHECK(c.p_max == doctest::Approx(1.0));
  CHECK(c.b_limit == doctest::Approx(st32 / 3.0).epsilon(1e-6));
}

TEST_CASE("single component constants are well defined") {
  const auto c = compute_constants(make_params({-0.5 * kPi2}, {{1.0}}), {kM}, kQ);
  CHECK(std::isfinite(c.k2));
  CHECK(std::isfinite(c.k3));
  CHECK(std::isfinite(c.k4));
  CHECK(c.k > 0.0);
}

TEST_CASE("diagonal scaling: Cbar max sqrt(beta) invariant, K1 rescales") {
  const auto base = compute_constants(two(0.0), {kM, kM}, kQ);
  const double c = 4.0;
  const auto scaled = compute_constants(make_params({-0.5 * kPi2, -0.5 * kPi2}, {{c, 0.0}, {0.0, c}}),
                                        {kM / std::sqrt(c), kM / std::sqrt(c)}, kQ);
  CHECK(scaled.cbar * std::sqrt(c) == doctest::Approx(base.cbar).epsilon(1e-12));
  CHECK(scaled.k1 == doctest::Approx(c * base.k1).epsilon(1e-12));
}

TEST_CASE("monotone dependencies") {
  // Lowering beta_22 raises Cbar, which lowers K1.
  const auto a = compute_constants(two(0.0), {kM, kM}, kQ);
  const auto b = compute_constants(make_params({-0.5 * kPi2, -0.5 * kPi2}, {{1.0, 0.0}, {0.0, 0.9}}), {kM, kM}, kQ);
  CHECK(b.cbar > a.cbar);
  CHECK(b.k1 < a.k1);
  // delta strictly decreases in each m_i once that m_i sets the minimum.
  const auto c = compute_constants(two(0.0), {kM, kM * 1.01}, kQ);
  const auto d = compute_constants(two(0.0), {kM, kM * 1.02}, kQ);
  CHECK(d.delta < c.delta);
}

TEST_CASE("compute_constants errors") {
  CHECK_THROWS_AS(compute_constants(make_params({-0.2 * kPi2}, {{1.0}}), {kM}, kQ), InvalidInput);
  CHECK_THROWS_AS(compute_constants(make_params({-0.5 * kPi2}, {{1.0}}), {-1.0}, kQ), InvalidInput);
  // m at the single-bubble level leaves no room for delta.
  CHECK_THROWS_AS(compute_constants(make_params({-0.5 * kPi2}, {{1.0}}), {oracle::sobolev_power_closed() / 3.0}, kQ),
                  NumericalFailure);
}
