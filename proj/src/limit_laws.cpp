#include "cmhop/limit_laws.hpp"

#include <cmath>

#include "cmhop/errors.hpp"

namespace cmhop {

namespace {

void check_tau(double tau) {
  if (!(tau > 1.0 && tau < 2.0)) throw InputError("tau must lie in (1,2)");
}

struct JointSum {
  std::span<const double> rho;
  double total = 0.0;

  // Extends the prefix ending at cumulative count `prev` with index i.
  void walk(std::size_t i, int prev, double weight) {
    if (i == rho.size()) {
      total += weight;
      return;
    }
    const double gap = rho[i] - (i == 0 ? 0.0 : rho[i - 1]);
    double term = 1.0;
    double fact = 1.0;
    for (int s = prev; s <= static_cast<int>(i); ++s) {
      const int step = s - prev;
      if (step > 0) {
        term *= gap;
        fact *= step;
      }
      walk(i + 1, s, weight * term / fact);
    }
  }
};

}  // namespace

double xi_marginal_cdf(const XiMarginal& m, double x) {
  check_tau(m.tau);
  if (m.k < 1) throw InputError("order-statistic index must be >= 1");
  if (!(x > 0.0)) throw InputError("xi CDF argument must be positive");
  const double rho = std::pow(x, 1.0 - m.tau);
  double term = 1.0;
  double sum = 1.0;
  for (int r = 1; r < m.k; ++r) {
    term *= rho / r;
    sum += term;
  }
  return sum * std::exp(-rho);
}

double xi_joint_cdf(double tau, std::span<const double> y) {
  check_tau(tau);
  if (y.empty()) throw InputError("joint CDF needs at least one coordinate");
  if (y.size() > static_cast<std::size_t>(kMaxJointOrder)) {
    throw InputError("joint CDF supports at most 8 coordinates");
  }
  std::vector<double> rho(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0)) throw InputError("joint CDF arguments must be positive");
    if (i > 0 && !(y[i] < y[i - 1])) {
      throw InputError("joint CDF arguments must be strictly decreasing");
    }
    rho[i] = std::pow(y[i], 1.0 - tau);
  }
  JointSum sum{rho};
  sum.walk(0, 0, 1.0);
  return sum.total * std::exp(-rho.back());
}

std::vector<double> xi_marginal_tends_to_zero(double tau, double x, int k_max) {
  if (k_max < 1) throw InputError("k_max must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) out.push_back(xi_marginal_cdf({tau, k}, x));
  return out;
}

}  // namespace cmhop
