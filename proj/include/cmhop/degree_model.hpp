#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cmhop/rng.hpp"

namespace cmhop {

using Degree = std::uint64_t;

inline constexpr double kDefaultDegreeCap = 9007199254740992.0;  // 2^53

// Degree distribution F with 1 - F(k) = k^{1-tau} (k = 1, 2, ...), optionally
// conditioned on D < N^alpha. A custom inverse CDF replaces the default sampler.
class DegreeLaw {
 public:
  using InverseCdf = std::function<Degree(double)>;
  using TailFn = std::function<double(Degree)>;

  static DegreeLaw power_law(double tau);
  static DegreeLaw truncated(double tau, double alpha);
  // `tail` is optional; without it tail() and quantile_b() are unavailable.
  static DegreeLaw custom(double tau, InverseCdf inverse_cdf, TailFn tail = {});

  double tau() const noexcept { return tau_; }
  const std::optional<double>& alpha() const noexcept { return alpha_; }
  bool is_truncated() const noexcept { return alpha_.has_value(); }
  bool is_custom() const noexcept { return static_cast<bool>(inverse_cdf_); }

  double degree_cap() const noexcept { return degree_cap_; }
  DegreeLaw& set_degree_cap(double cap);

  // Same law with the truncation dropped.
  DegreeLaw unconditioned() const;
  // Same law conditioned on D < N^alpha.
  DegreeLaw with_truncation(double alpha) const;

  const InverseCdf& inverse_cdf() const noexcept { return inverse_cdf_; }
  const TailFn& custom_tail() const noexcept { return custom_tail_; }

 private:
  DegreeLaw(double tau, std::optional<double> alpha);

  double tau_;
  std::optional<double> alpha_;
  InverseCdf inverse_cdf_;
  TailFn custom_tail_;
  double degree_cap_ = kDefaultDegreeCap;
};

struct DegreeDraw {
  Degree value = 0;
  bool capped = false;  // the hard cap bound the draw
};

struct DegreeSequence {
  std::vector<Degree> degrees;
  bool parity_corrected = false;
  bool degree_capped = false;

  std::size_t size() const noexcept { return degrees.size(); }
  // Sum of degrees; saturates at UINT64_MAX.
  std::uint64_t total() const noexcept;
  // Sum of degrees in extended precision (never saturates).
  long double total_exact() const noexcept;
};

// Inverse-transform draw from an unconditioned law: ceil(u^{-1/(tau-1)}),
// evaluated in floating point and capped at law.degree_cap().
DegreeDraw draw_degree(const DegreeLaw& law, double u);
Degree sample_degree(const DegreeLaw& law, double u);

// Largest admissible degree under D < N^alpha (ceil(N^alpha) - 1).
Degree truncation_limit(double alpha, std::size_t n);

// Draw from the law conditioned on D < N^alpha by rejection.
DegreeDraw sample_degree_conditioned(const DegreeLaw& law, std::size_t n, RngStream& rng);

// N i.i.d. draws; an odd total is fixed by adding one stub to the last node.
DegreeSequence sample_sequence(const DegreeLaw& law, std::size_t n, RngStream& rng);
// Parity fix applied to given raw draws.
DegreeSequence make_sequence(std::vector<Degree> raw);

// 1 - F(k). Truncated laws need the horizon n.
double tail(const DegreeLaw& law, Degree k, std::optional<std::size_t> n = std::nullopt);

// min { k : 1 - F(k) < epsilon / 8 } for the unconditioned law.
Degree quantile_b(const DegreeLaw& law, double epsilon);

// u with N (1 - F(u)) = 1 for the continuous tail x^{1-tau}: N^{1/(tau-1)}.
double solve_u_N(const DegreeLaw& law, std::size_t n);

}  // namespace cmhop
