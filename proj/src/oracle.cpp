#include "cmhop/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "cmhop/errors.hpp"

namespace cmhop {

namespace {

void pair_up(std::vector<StubId>& free, std::vector<StubPair>& pairs,
             const std::function<void(std::span<const StubPair>)>& f) {
  if (free.empty()) {
    f(pairs);
    return;
  }
  const StubId first = free.front();
  for (std::size_t i = 1; i < free.size(); ++i) {
    const StubId other = free[i];
    std::vector<StubId> rest;
    rest.reserve(free.size() - 2);
    for (std::size_t j = 1; j < free.size(); ++j) {
      if (j != i) rest.push_back(free[j]);
    }
    pairs.emplace_back(first, other);
    pair_up(rest, pairs, f);
    pairs.pop_back();
  }
}

}  // namespace

void for_each_perfect_matching(std::uint64_t stubs, const std::function<void(std::span<const StubPair>)>& f) {
  if (stubs % 2 != 0) throw InputError("perfect matchings need an even stub count");
  std::vector<StubId> free(stubs);
  std::iota(free.begin(), free.end(), StubId{0});
  std::vector<StubPair> pairs;
  pair_up(free, pairs, f);
}

ExactDistribution exact_distribution(std::span<const Degree> degrees, NodeId a, NodeId b,
                                     std::uint32_t cutoff) {
  std::uint64_t total = 0;
  for (Degree d : degrees) total += d;
  if (total > kOracleMaxStubs) throw InputError("oracle supports at most 12 stubs");
  if (total < 2 || total % 2 != 0) throw InputError("total degree must be even and at least 2");
  if (a >= degrees.size() || b >= degrees.size()) throw InputError("endpoint out of range");

  ExactDistribution out;
  RngStream unused(0);
  for_each_perfect_matching(total, [&](std::span<const StubPair> pairs) {
    Matching m = Matching::from_pairs(degrees, pairs);
    ++out.matchings;
    ++out.hopcount[hopcount(m, a, b, cutoff, unused).label()];
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& [s, t] : pairs) {
      const NodeId u = m.owner(s);
      const NodeId v = m.owner(t);
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges.begin(), edges.end());
    std::string key;
    for (const auto& [u, v] : edges) {
      if (!key.empty()) key += ' ';
      key += std::to_string(u + 1) + "-" + std::to_string(v + 1);
    }
    ++out.multigraphs[key];
  });
  return out;
}

}  // namespace cmhop
