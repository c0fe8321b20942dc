#include "cmhop/diagnostics.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cmhop/errors.hpp"

namespace cmhop {

OrderStats order_stats(const DegreeSequence& seq, const DegreeLaw& law, std::size_t m) {
  if (m < 1 || m > seq.size()) throw InputError("order statistics need 1 <= m <= N");
  OrderStats out;
  out.sorted_degrees_desc.resize(m);
  std::partial_sort_copy(seq.degrees.begin(), seq.degrees.end(), out.sorted_degrees_desc.begin(),
                         out.sorted_degrees_desc.end(), std::greater<>{});
  out.u_N = solve_u_N(law.unconditioned(), seq.size());
  out.L_N = seq.total();
  out.ratios.reserve(m);
  for (Degree d : out.sorted_degrees_desc) out.ratios.push_back(static_cast<double>(d) / out.u_N);
  out.l_ratio = static_cast<double>(seq.total_exact() / out.u_N);
  return out;
}

std::vector<NodeId> giants_topk(const DegreeSequence& seq, std::size_t k) {
  if (k < 1 || k > seq.size()) throw InputError("giant count must satisfy 1 <= k <= N");
  std::vector<NodeId> ids(seq.size());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  auto larger = [&](NodeId x, NodeId y) {
    return seq.degrees[x] != seq.degrees[y] ? seq.degrees[x] > seq.degrees[y] : x < y;
  };
  std::nth_element(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k - 1), ids.end(), larger);
  ids.resize(k);
  std::sort(ids.begin(), ids.end());
  return ids;
}

double beta_exponent(double tau, double alpha) { return (1.0 + alpha * (4.0 - tau)) / 4.0; }

bool beta_regime(double tau, double alpha) {
  return alpha > 1.0 / tau && alpha < 1.0 / (tau - 1.0);
}

std::vector<NodeId> giants_beta(const DegreeSequence& seq, const DegreeLaw& law) {
  if (!law.is_truncated()) throw UsageError("beta-giants need a truncated degree law");
  const double n = static_cast<double>(seq.size());
  const double alpha = *law.alpha();
  const double lower = std::pow(n, beta_exponent(law.tau(), alpha));
  const double upper = std::pow(n, alpha);
  std::vector<NodeId> ids;
  for (std::size_t v = 0; v < seq.size(); ++v) {
    const auto d = static_cast<double>(seq.degrees[v]);
    if (d > lower && d < upper) ids.push_back(static_cast<NodeId>(v));
  }
  return ids;
}

namespace {

bool endpoint_on_giants(Matching& m, NodeId v, const absl::flat_hash_map<NodeId, std::size_t>& index,
                        RngStream& rng) {
  bool ok = true;
  m.for_each_revealed_neighbor(v, [&](NodeId w) {
    ok = index.contains(w);
    return ok;
  });
  while (ok) {
    const auto w = m.reveal_next(v, rng);
    if (!w) break;
    ok = index.contains(*w);
  }
  return ok;
}

bool giants_complete(Matching& m, const std::vector<NodeId>& giants,
                     const absl::flat_hash_map<NodeId, std::size_t>& index, RngStream& rng) {
  const std::size_t g = giants.size();
  std::vector<char> adjacent(g * g, 0);
  auto mark = [&](NodeId x, NodeId y) {
    const auto it = index.find(y);
    if (it == index.end() || x == y) return;
    const std::size_t i = index.at(x);
    adjacent[i * g + it->second] = adjacent[it->second * g + i] = 1;
  };
  for (NodeId x : giants) {
    m.for_each_revealed_neighbor(x, [&](NodeId y) {
      mark(x, y);
      return true;
    });
  }
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = i + 1; j < g; ++j) {
      if (adjacent[i * g + j]) continue;
      // Reveal the side with fewer hidden stubs until the pair shows up.
      NodeId x = giants[i];
      NodeId y = giants[j];
      if (m.unrevealed_count(y) < m.unrevealed_count(x)) std::swap(x, y);
      while (!adjacent[i * g + j]) {
        const auto w = m.reveal_next(x, rng);
        if (!w) return false;
        mark(x, *w);
      }
    }
  }
  return true;
}

}  // namespace

EventFlags event_flags(Matching& m, const DegreeSequence& seq, const DegreeLaw& law,
                       const std::vector<NodeId>& giants, double epsilon, RngStream& rng, NodeId a,
                       NodeId b) {
  if (giants.empty()) throw UsageError("event flags need at least one giant");
  if (a >= seq.size() || b >= seq.size()) throw InputError("endpoint out of range");
  absl::flat_hash_map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < giants.size(); ++i) index.emplace(giants[i], i);

  EventFlags flags;
  flags.giant_ids = giants;
  flags.b_threshold = quantile_b(law.unconditioned(), epsilon);
  flags.D = seq.degrees[a] <= flags.b_threshold && seq.degrees[b] <= flags.b_threshold;
  flags.B = endpoint_on_giants(m, a, index, rng) && endpoint_on_giants(m, b, index, rng);
  flags.C = giants_complete(m, giants, index, rng);
  flags.A = flags.B && flags.C && flags.D;
  return flags;
}

double giant_mass_fraction(const DegreeSequence& seq, const std::vector<NodeId>& giants) {
  const long double total = seq.total_exact();
  if (total <= 0) return 0.0;
  long double mass = 0;
  for (NodeId v : giants) mass += static_cast<long double>(seq.degrees.at(v));
  return static_cast<double>(mass / total);
}

}  // namespace cmhop
