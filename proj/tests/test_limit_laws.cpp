#include <algorithm>
#include <cmath>
#include <vector>

#include "cmhop/errors.hpp"
#include "cmhop/limit_laws.hpp"
#include "cmhop/rng.hpp"
#include "doctest.h"

using namespace cmhop;

TEST_CASE("largest-order marginal is Frechet") {
  for (double x : {0.1, 0.5, 1.0, 2.0, 7.5}) {
    CHECK(xi_marginal_cdf({1.8, 1}, x) == doctest::Approx(std::exp(-std::pow(x, -0.8))));
  }
  CHECK_THROWS_AS(xi_marginal_cdf({1.8, 1}, 0.0), InputError);
}

TEST_CASE("Frechet cdf equals the integral of its density") {
  const double tau = 1.6;
  auto density = [&](double t) {
    return (tau - 1) * std::pow(t, -tau) * std::exp(-std::pow(t, 1 - tau));
  };
  // Simpson on [1e-3, x]; the mass below 1e-3 is exp(-1e-3^{1-tau}) ~ 0.
  for (double x : {0.5, 1.0, 3.0}) {
    const int n = 200000;
    const double a = 1e-3, h = (x - a) / n;
    double s = density(a) + density(x);
    for (int i = 1; i < n; ++i) s += density(a + i * h) * (i % 2 ? 4 : 2);
    CHECK(s * h / 3 == doctest::Approx(xi_marginal_cdf({tau, 1}, x)).epsilon(1e-6));
  }
}

TEST_CASE("second marginal is Poisson(rho) <= 1") {
  const double rho = std::pow(1.3, -0.8);
  CHECK(xi_marginal_cdf({1.8, 2}, 1.3) == doctest::Approx(std::exp(-rho) * (1 + rho)));
}

TEST_CASE("lower order statistics sink toward zero") {
  auto v = xi_marginal_tends_to_zero(1.8, 0.7, 8);
  REQUIRE(v.size() == 8);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
  CHECK(xi_marginal_tends_to_zero(1.8, 0.05, 40).back() > 0.99);
}

TEST_CASE("joint cdf sanity") {
  const double tau = 1.8;
  std::vector<double> y{3.0, 1.0, 0.4};
  const double j = xi_joint_cdf(tau, y);
  for (int i = 0; i < 3; ++i) CHECK(j <= xi_marginal_cdf({tau, i + 1}, y[i]) + 1e-15);
  CHECK(j > 0);

  // Two coordinates with rho1=1, rho2=3: P(N1=0, N2<=1) = e^{-3} (1 + 2).
  const double y1 = 1.0, y2 = std::pow(3.0, 1 / (1 - tau));
  std::vector<double> pair{y1, y2};
  CHECK(xi_joint_cdf(tau, pair) == doctest::Approx(3 * std::exp(-3.0)));

  // Dropping the top constraint recovers the second marginal.
  std::vector<double> loose{1e9, 0.8};
  CHECK(xi_joint_cdf(tau, loose) == doctest::Approx(xi_marginal_cdf({tau, 2}, 0.8)).epsilon(1e-6));

  std::vector<double> one{0.9};
  CHECK(xi_joint_cdf(tau, one) == doctest::Approx(xi_marginal_cdf({tau, 1}, 0.9)));
}

TEST_CASE("joint cdf matches a simulated Poisson process") {
  // Limit points are Gamma_i^{-1/(tau-1)} with Gamma_i unit-rate arrivals.
  const double tau = 1.7;
  std::vector<double> y{2.5, 1.2, 0.9, 0.5};
  RngStream rng(77);
  const int n = 200000;
  int hits = 0;
  for (int r = 0; r < n; ++r) {
    double gamma = 0;
    bool ok = true;
    for (std::size_t i = 0; i < y.size() && ok; ++i) {
      gamma += -std::log(rng.uniform_open01());
      ok = std::pow(gamma, -1 / (tau - 1)) < y[i];
    }
    hits += ok;
  }
  const double exact = xi_joint_cdf(tau, y);
  const double se = std::sqrt(exact * (1 - exact) / n);
  CHECK(std::fabs(hits / double(n) - exact) <= 4 * se);
}

TEST_CASE("joint cdf input checks") {
  std::vector<double> nine(9);
  for (int i = 0; i < 9; ++i) nine[i] = 10.0 - i;
  CHECK_THROWS_AS(xi_joint_cdf(1.8, nine), InputError);
  std::vector<double> flat{1.0, 1.0};
  CHECK_THROWS_AS(xi_joint_cdf(1.8, flat), InputError);
  std::vector<double> neg{1.0, -0.5};
  CHECK_THROWS_AS(xi_joint_cdf(1.8, neg), InputError);
  std::vector<double> eight(8);
  for (int i = 0; i < 8; ++i) eight[i] = 9.0 - i;
  CHECK_NOTHROW(xi_joint_cdf(1.8, eight));
}
