#pragma once

// Reference implementations used only by the tests. They favour obviousness
// over speed and share no code with the library beyond plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "cmhop/distance.hpp"
#include "cmhop/matching.hpp"

namespace oracle {

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

// Plain BFS over an explicit edge list of node pairs.
inline std::uint32_t bfs_distance(std::size_t nodes,
                                  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                  std::uint32_t a, std::uint32_t b) {
  std::vector<std::vector<std::uint32_t>> adj(nodes);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::uint32_t> dist(nodes, kUnreachable);
  std::deque<std::uint32_t> queue{a};
  dist[a] = 0;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    for (auto w : adj[u]) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist[b];
}

inline std::vector<std::pair<std::uint32_t, std::uint32_t>> node_edges(const cmhop::Matching& m) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (auto p : m.revealed_pairs()) edges.emplace_back(m.owner(p.first), m.owner(p.second));
  return edges;
}

// Size of the connected component containing a.
inline std::size_t component_size(std::size_t nodes,
                                  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                  std::uint32_t a) {
  std::size_t count = 0;
  for (std::uint32_t v = 0; v < nodes; ++v) {
    if (bfs_distance(nodes, edges, a, v) != kUnreachable) ++count;
  }
  return count;
}

// Expected classification of the exact distance d under a hop cutoff. A
// distance beyond the cutoff is INFINITE when the two nodes are disconnected
// and one of them sits in a component of radius below the cutoff; the tests
// that use this only pass instances where that cannot be ambiguous.
inline bool agrees(const cmhop::Hopcount& h, std::uint32_t d, std::uint32_t cutoff) {
  if (d != kUnreachable && d <= cutoff) return h.kind == cmhop::Hopcount::Kind::finite && h.value == d;
  return h.kind != cmhop::Hopcount::Kind::finite;
}

// Double factorial (L-1)!! for even L.
inline std::uint64_t matchings_count(std::uint64_t stubs) {
  std::uint64_t r = 1;
  for (std::uint64_t k = stubs; k > 1; k -= 2) r *= k - 1;
  return r;
}

// Upper chi-square tail by series for the regularized incomplete gamma.
inline double chi_square_sf(double x, int dof) {
  const double a = dof / 2.0;
  const double z = x / 2.0;
  if (z <= 0) return 1.0;
  if (z < a + 1) {
    double term = 1.0 / a, sum = term;
    for (int n = 1; n < 1000; ++n) {
      term *= z / (a + n);
      sum += term;
      if (term < sum * 1e-16) break;
    }
    return 1.0 - sum * std::exp(-z + a * std::log(z) - std::lgamma(a));
  }
  // Continued fraction (Lentz) for the upper tail.
  double b = z + 1 - a, c = 1e300, d = 1 / b, h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1) < 1e-15) break;
  }
  return std::exp(-z + a * std::log(z) - std::lgamma(a)) * h;
}

}  // namespace oracle
