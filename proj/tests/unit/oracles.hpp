#pragma once

// Independent reference computations for tests: Boost quadrature on the
// continuous problem, closed forms, and small helpers.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// 4 pi int_a^b f(r) r^2 dr by tanh-sinh quadrature.
inline double ball_integral(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> q;
  return 4.0 * pi * q.integrate([&](double r) { return f(r) * r * r; }, a, b);
}

/// 4 pi int_0^inf f(r) r^2 dr.
inline double space_integral(const std::function<double(double)>& f) {
  boost::math::quadrature::exp_sinh<double> q;
  return 4.0 * pi * q.integrate([&](double r) { return f(r) * r * r; }, 0.0, std::numeric_limits<double>::infinity());
}

inline double bubble(double eps, double r) { return std::pow(3.0 * eps * eps, 0.25) / std::sqrt(eps * eps + r * r); }
inline double bubble_slope(double eps, double r) {
  return -std::pow(3.0 * eps * eps, 0.25) * r / std::pow(eps * eps + r * r, 1.5);
}

/// 3 sqrt(3) pi^2 / 4, the Dirichlet energy of U_1 in closed form.
inline double sobolev_power_closed() { return 3.0 * std::sqrt(3.0) * pi * pi / 4.0; }

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Root of a monotone scalar function on [a, b] by bisection.
inline double bisect(const std::function<double(double)>& g, double a, double b) {
  double ga = g(a);
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    const double gm = g(m);
    if ((gm > 0) == (ga > 0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace oracle
