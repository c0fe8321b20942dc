#include "cmhop/distance.hpp"

#include <absl/container/flat_hash_map.h>

#include <vector>

#include "cmhop/errors.hpp"

namespace cmhop {

namespace {

using DepthMap = absl::flat_hash_map<NodeId, std::uint32_t>;

void check_args(const Matching& m, NodeId a, NodeId b, std::uint32_t cutoff) {
  if (a >= m.node_count() || b >= m.node_count()) throw InputError("node id out of range");
  if (cutoff < 1) throw InputError("cutoff must be at least 1");
}

// Visits every neighbor of v (revealing as needed) until visit returns false.
// Returns false if stopped early.
template <class Visit>
bool expand(Matching& m, NodeId v, RngStream& rng, Visit&& visit) {
  bool go = true;
  m.for_each_revealed_neighbor(v, [&](NodeId w) {
    go = visit(w);
    return go;
  });
  if (!go) return false;
  while (auto w = m.reveal_next(v, rng)) {
    if (!visit(*w)) return false;
  }
  return true;
}

// One BFS level from `frontier`; returns the next frontier. If `stop_at` is
// discovered the returned flag is set and the level is abandoned.
struct Level {
  std::vector<NodeId> next;
  bool hit = false;
};

Level grow(Matching& m, const std::vector<NodeId>& frontier, std::uint32_t depth, DepthMap& seen,
           RngStream& rng, const DepthMap* other, NodeId* meet) {
  Level level;
  for (NodeId v : frontier) {
    const bool done = expand(m, v, rng, [&](NodeId w) {
      if (!seen.try_emplace(w, depth + 1).second) return true;
      if (other != nullptr && other->contains(w)) {
        *meet = w;
        level.hit = true;
        return false;
      }
      level.next.push_back(w);
      return true;
    });
    if (!done) return level;
  }
  return level;
}

// Does the BFS from `frontier` (at `depth`) run out before depth `cutoff`?
bool exhausted_before(Matching& m, std::uint32_t cutoff, RngStream& rng,
                      DepthMap& seen, std::vector<NodeId> frontier, std::uint32_t depth) {
  while (depth < cutoff) {
    if (frontier.empty()) return true;
    frontier = grow(m, frontier, depth, seen, rng, nullptr, nullptr).next;
    ++depth;
  }
  return frontier.empty();
}

}  // namespace

std::string Hopcount::label() const {
  switch (kind) {
    case Kind::finite:
      return std::to_string(value);
    case Kind::infinite:
      return "inf";
    case Kind::exceeds_cutoff:
      return ">" + std::to_string(value);
  }
  return {};
}

Hopcount hopcount(Matching& m, NodeId a, NodeId b, std::uint32_t cutoff, RngStream& rng) {
  check_args(m, a, b, cutoff);
  if (a == b) return Hopcount::finite(0);
  DepthMap seen{{a, 0}};
  DepthMap target{{b, 0}};
  std::vector<NodeId> frontier{a};
  for (std::uint32_t depth = 0; depth < cutoff; ++depth) {
    if (frontier.empty()) return Hopcount::infinite();
    NodeId meet = 0;
    Level level = grow(m, frontier, depth, seen, rng, &target, &meet);
    if (level.hit) return Hopcount::finite(depth + 1);
    frontier = std::move(level.next);
  }
  if (frontier.empty()) return Hopcount::infinite();
  // b may sit in a small component that a's search never proves disjoint.
  DepthMap seen_b{{b, 0}};
  if (exhausted_before(m, cutoff, rng, seen_b, {b}, 0)) return Hopcount::infinite();
  return Hopcount::exceeds(cutoff);
}

Hopcount bidirectional_hopcount(Matching& m, NodeId a, NodeId b, std::uint32_t cutoff,
                                RngStream& rng) {
  check_args(m, a, b, cutoff);
  if (a == b) return Hopcount::finite(0);

  struct Side {
    DepthMap seen;
    std::vector<NodeId> frontier;
    std::uint32_t depth = 0;
  };
  Side sa{{{a, 0}}, {a}, 0};
  Side sb{{{b, 0}}, {b}, 0};

  auto cost = [&](const Side& s) {
    long double c = 0;
    for (NodeId v : s.frontier) c += static_cast<long double>(m.degree(v));
    return c;
  };

  // Invariant: the balls of radius sa.depth and sb.depth are disjoint, so the
  // first meeting found while growing a side is at the shortest distance.
  while (sa.depth + sb.depth < cutoff) {
    Side& grow_side = cost(sa) <= cost(sb) ? sa : sb;
    Side& other = &grow_side == &sa ? sb : sa;
    NodeId meet = 0;
    Level level = grow(m, grow_side.frontier, grow_side.depth, grow_side.seen, rng, &other.seen,
                       &meet);
    if (level.hit) return Hopcount::finite(grow_side.depth + 1 + other.seen.at(meet));
    grow_side.frontier = std::move(level.next);
    ++grow_side.depth;
    if (grow_side.frontier.empty()) return Hopcount::infinite();
  }
  if (exhausted_before(m, cutoff, rng, sa.seen, std::move(sa.frontier), sa.depth) ||
      exhausted_before(m, cutoff, rng, sb.seen, std::move(sb.frontier), sb.depth)) {
    return Hopcount::infinite();
  }
  return Hopcount::exceeds(cutoff);
}

}  // namespace cmhop
