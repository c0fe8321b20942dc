#pragma once

#include <span>
#include <vector>

namespace cmhop {

inline constexpr int kMaxJointOrder = 8;

// Limit law of the k-th largest degree divided by u_N.
struct XiMarginal {
  double tau;
  int k;  // 1 = largest
};

// P(xi_k < x) = sum_{r<k} x^{(1-tau) r} / r! * exp(-x^{1-tau}).
double xi_marginal_cdf(const XiMarginal& m, double x);

// P(xi_1 < y_1, ..., xi_k < y_k) for y_1 > ... > y_k > 0, k <= 8.
//
// With rho_i = y_i^{1-tau}, the number of limit points above y_i is Poisson
// with mean rho_i; xi_i < y_i means at most i-1 of them. Summing over the
// cumulative counts s_1 <= ... <= s_k with s_i <= i-1:
//   e^{-rho_k} * prod_i (rho_i - rho_{i-1})^{s_i - s_{i-1}} / (s_i - s_{i-1})!
// with rho_0 = 0, s_0 = 0.
double xi_joint_cdf(double tau, std::span<const double> y);

// [xi_marginal_cdf(k, x)] for k = 1..k_max.
std::vector<double> xi_marginal_tends_to_zero(double tau, double x, int k_max);

}  // namespace cmhop
