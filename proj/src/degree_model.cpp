#include "cmhop/degree_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cmhop/errors.hpp"

namespace cmhop {

namespace {

void check_tau(double tau) {
  if (!(tau > 1.0 && tau < 2.0)) {
    throw InputError("tau must lie in the open interval (1,2), got " + std::to_string(tau));
  }
}

// P(D > k) for the unconditioned law.
double raw_tail(const DegreeLaw& law, Degree k) {
  if (law.is_custom()) {
    if (!law.custom_tail()) throw UsageError("custom degree law has no tail function");
    return law.custom_tail()(k);
  }
  return std::pow(static_cast<double>(k), 1.0 - law.tau());
}

}  // namespace

DegreeLaw::DegreeLaw(double tau, std::optional<double> alpha) : tau_(tau), alpha_(alpha) {
  check_tau(tau);
  if (alpha && !(*alpha > 0.0)) throw InputError("truncation exponent alpha must be positive");
}

DegreeLaw DegreeLaw::power_law(double tau) { return DegreeLaw(tau, std::nullopt); }

DegreeLaw DegreeLaw::truncated(double tau, double alpha) { return DegreeLaw(tau, alpha); }

DegreeLaw DegreeLaw::custom(double tau, InverseCdf inverse_cdf, TailFn tail) {
  if (!inverse_cdf) throw InputError("custom degree law needs an inverse CDF");
  DegreeLaw law(tau, std::nullopt);
  law.inverse_cdf_ = std::move(inverse_cdf);
  law.custom_tail_ = std::move(tail);
  return law;
}

DegreeLaw& DegreeLaw::set_degree_cap(double cap) {
  if (!(cap >= 1.0)) throw InputError("degree cap must be at least 1");
  degree_cap_ = cap;
  return *this;
}

DegreeLaw DegreeLaw::unconditioned() const {
  DegreeLaw copy = *this;
  copy.alpha_.reset();
  return copy;
}

DegreeLaw DegreeLaw::with_truncation(double alpha) const {
  if (!(alpha > 0.0)) throw InputError("truncation exponent alpha must be positive");
  DegreeLaw copy = *this;
  copy.alpha_ = alpha;
  return copy;
}

std::uint64_t DegreeSequence::total() const noexcept {
  std::uint64_t sum = 0;
  for (Degree d : degrees) {
    if (__builtin_add_overflow(sum, d, &sum)) return std::numeric_limits<std::uint64_t>::max();
  }
  return sum;
}

long double DegreeSequence::total_exact() const noexcept {
  long double sum = 0;
  for (Degree d : degrees) sum += static_cast<long double>(d);
  return sum;
}

DegreeDraw draw_degree(const DegreeLaw& law, double u) {
  if (!(u > 0.0 && u < 1.0)) throw InputError("uniform variate must lie in (0,1)");
  if (law.is_custom()) {
    const Degree d = law.inverse_cdf()(u);
    if (d < 1) throw InputError("custom inverse CDF returned a degree below 1");
    if (static_cast<double>(d) > law.degree_cap()) {
      return {static_cast<Degree>(law.degree_cap()), true};
    }
    return {d, false};
  }
  // pow is exact on exact powers (0.25^-2 == 16), which keeps ceil honest.
  const double x = std::ceil(std::pow(u, -1.0 / (law.tau() - 1.0)));
  if (!(x <= law.degree_cap())) return {static_cast<Degree>(law.degree_cap()), true};
  return {static_cast<Degree>(x), false};
}

Degree sample_degree(const DegreeLaw& law, double u) {
  if (law.is_truncated()) throw UsageError("sample_degree needs an unconditioned law");
  return draw_degree(law, u).value;
}

Degree truncation_limit(double alpha, std::size_t n) {
  const double horizon = std::pow(static_cast<double>(n), alpha);
  const double limit = std::ceil(horizon) - 1.0;
  if (limit >= 0x1.0p63) return std::numeric_limits<Degree>::max();
  return static_cast<Degree>(limit);
}

DegreeDraw sample_degree_conditioned(const DegreeLaw& law, std::size_t n, RngStream& rng) {
  if (!law.is_truncated()) throw UsageError("conditioned sampling needs a truncation exponent");
  if (n < 2) throw InputError("node count must be at least 2");
  const Degree limit = truncation_limit(*law.alpha(), n);
  for (;;) {
    const DegreeDraw draw = draw_degree(law, rng.uniform_open01());
    if (draw.value <= limit) return draw;
  }
}

DegreeSequence make_sequence(std::vector<Degree> raw) {
  DegreeSequence seq;
  seq.degrees = std::move(raw);
  unsigned parity = 0;
  for (Degree d : seq.degrees) parity ^= static_cast<unsigned>(d & 1U);
  if (parity != 0 && !seq.degrees.empty()) {
    seq.degrees.back() += 1;
    seq.parity_corrected = true;
  }
  return seq;
}

DegreeSequence sample_sequence(const DegreeLaw& law, std::size_t n, RngStream& rng) {
  if (n < 2) throw InputError("node count must be at least 2");
  std::vector<Degree> raw(n);
  bool capped = false;
  if (law.is_truncated()) {
    for (auto& d : raw) {
      const DegreeDraw draw = sample_degree_conditioned(law, n, rng);
      d = draw.value;
      capped |= draw.capped;
    }
  } else {
    for (auto& d : raw) {
      const DegreeDraw draw = draw_degree(law, rng.uniform_open01());
      d = draw.value;
      capped |= draw.capped;
    }
  }
  DegreeSequence seq = make_sequence(std::move(raw));
  seq.degree_capped = capped;
  return seq;
}

double tail(const DegreeLaw& law, Degree k, std::optional<std::size_t> n) {
  if (k < 1) throw InputError("tail is defined for k >= 1");
  if (!law.is_truncated()) return raw_tail(law, k);
  if (!n) throw UsageError("tail of a truncated law needs the horizon N");
  // P(D >= N^alpha) = P(D > limit) for integer D.
  const Degree limit = truncation_limit(*law.alpha(), *n);
  const double beyond = limit >= 1 ? raw_tail(law, limit) : 1.0;
  const double kept = 1.0 - beyond;
  if (!(kept > 0.0)) throw InputError("truncation leaves no mass");
  const double above_k = raw_tail(law, k) - beyond;
  return above_k > 0.0 ? above_k / kept : 0.0;
}

Degree quantile_b(const DegreeLaw& law, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0,1)");
  const DegreeLaw base = law.unconditioned();
  const double threshold = epsilon / 8.0;
  auto below = [&](Degree k) { return tail(base, k) < threshold; };
  if (below(1)) return 1;
  // Exponential search then bisection on the non-increasing tail.
  Degree hi = 2;
  while (!below(hi)) {
    if (hi > (std::numeric_limits<Degree>::max() >> 1)) throw InputError("quantile out of range");
    hi <<= 1;
  }
  Degree lo = hi >> 1;  // !below(lo)
  while (hi - lo > 1) {
    const Degree mid = lo + (hi - lo) / 2;
    (below(mid) ? hi : lo) = mid;
  }
  return hi;
}

double solve_u_N(const DegreeLaw& law, std::size_t n) {
  if (law.is_truncated()) throw UsageError("u_N is defined for the unconditioned law");
  if (n < 2) throw InputError("node count must be at least 2");
  return std::pow(static_cast<double>(n), 1.0 / (law.tau() - 1.0));
}

}  // namespace cmhop
