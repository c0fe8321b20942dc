#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cmhop {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval for successes/trials at the given z (95% default).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

// sup_x |F_n(x) - F(x)|; samples need not be sorted.
double ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf);

// sup_x |F_n(x) - G_m(x)|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Half the L1 distance between two probability vectors of equal length.
double total_variation(std::span<const double> p, std::span<const double> q);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Chi-square test of homogeneity on a 2 x K table; all-zero columns dropped.
ChiSquareResult chi_square_homogeneity(std::span<const std::uint64_t> a,
                                       std::span<const std::uint64_t> b);

// Empirical CDF value #{x_i <= x} / n over sorted samples.
double empirical_cdf(std::span<const double> sorted, double x);

double median(std::vector<double> values);

}  // namespace cmhop
