#pragma once

#include <absl/container/flat_hash_map.h>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cmhop/degree_model.hpp"
#include "cmhop/detail/fenwick.hpp"
#include "cmhop/rng.hpp"

namespace cmhop {

// Nodes are 0-based internally; node 0 and node 1 are the paper's nodes 1 and 2.
using NodeId = std::uint32_t;
// Stubs of node v occupy [first_stub(v), first_stub(v) + degree(v)).
using StubId = std::uint64_t;
using StubPair = std::pair<StubId, StubId>;

inline constexpr std::uint64_t kDefaultEagerStubCap = std::uint64_t{1} << 31;
inline constexpr std::uint64_t kDefaultLazyStubCap = std::uint64_t{1} << 62;
// Eager builds refuse to allocate more than this for their stub arrays.
inline constexpr std::uint64_t kDefaultEagerMemoryBudget = std::uint64_t{2} << 30;

enum class MatchingMode { eager, lazy };

// A uniform random perfect matching of the stubs of a degree sequence:
// the configuration-model multigraph, self-loops and multi-edges kept.
//
// Eager mode pairs every stub up front. Lazy mode reveals pairs on demand:
// the partner of a stub is drawn uniformly from all other unrevealed stubs,
// which yields the same law as the eager matching (deferred decisions). The
// lazy pool is a Fenwick tree over per-node unrevealed counts plus a sparse
// swap-with-last array per touched node, so memory is O(N + revealed).
//
// A lazy Matching mutates on reveal and must stay on one thread.
class Matching {
 public:
  static Matching build_eager(const DegreeSequence& seq, RngStream& rng,
                              std::uint64_t stub_cap = kDefaultEagerStubCap,
                              std::uint64_t memory_budget = kDefaultEagerMemoryBudget);
  static Matching make_lazy(const DegreeSequence& seq,
                            std::uint64_t stub_cap = kDefaultLazyStubCap);
  // Eager matching from explicit pairs; every stub must appear exactly once.
  static Matching from_pairs(std::span<const Degree> degrees, std::span<const StubPair> pairs);

  MatchingMode mode() const noexcept { return mode_; }
  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::uint64_t stub_count() const noexcept { return offsets_.back(); }
  Degree degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  StubId first_stub(NodeId v) const { return offsets_[v]; }
  NodeId owner(StubId s) const;

  bool is_revealed(StubId s) const;
  std::optional<StubId> partner(StubId s) const;
  std::uint64_t unrevealed_count(NodeId v) const;
  std::uint64_t unrevealed_total() const noexcept { return unrevealed_total_; }

  // Lazy mode only: pairs an unrevealed stub with a uniform unrevealed stub.
  StubId reveal_partner(StubId s, RngStream& rng);

  // Lazy mode: reveals one unrevealed stub of v and returns its partner's node;
  // nullopt when v has none left (always nullopt in eager mode).
  std::optional<NodeId> reveal_next(NodeId v, RngStream& rng);

  // Calls f(w) for each revealed stub of v matched to node w, until f returns
  // false. Self-loops report v twice. f must not reveal stubs.
  void for_each_revealed_neighbor(NodeId v, const std::function<bool(NodeId)>& f) const;

  // Multiset of neighbors (size = degree). Reveals v's stubs on demand.
  std::vector<NodeId> neighbors(NodeId v, RngStream& rng);

  // Revealed pairs (s, t) with s < t, ordered by s.
  std::vector<StubPair> revealed_pairs() const;

 private:
  struct RevealedEnd {
    StubId own;
    StubId other;
    NodeId other_node;
  };
  struct LazyNode {
    std::uint64_t remaining = 0;
    // Unrevealed stubs sit at positions [0, remaining); slot p holds
    // first_stub + p unless overridden.
    absl::flat_hash_map<std::uint64_t, StubId> slot;
    absl::flat_hash_map<StubId, std::uint64_t> where;
    std::vector<RevealedEnd> revealed;
  };

  Matching(MatchingMode mode, std::vector<std::uint64_t> offsets);
  template <class Word>
  void shuffle_pairs(std::vector<Word>& partner, RngStream& rng);
  static std::vector<std::uint64_t> prefix_offsets(std::span<const Degree> degrees,
                                                   std::uint64_t stub_cap);

  LazyNode& touch(NodeId v);
  StubId slot_at(const LazyNode& node, NodeId v, std::uint64_t pos) const;
  std::uint64_t position_of(const LazyNode& node, NodeId v, StubId s) const;
  StubId take_at(NodeId v, std::uint64_t pos);
  // Removes a uniform unrevealed stub from the whole pool and records the pair.
  StubId pair_with_random(NodeId v, StubId s, RngStream& rng);

  MatchingMode mode_;
  std::vector<std::uint64_t> offsets_;
  std::uint64_t unrevealed_total_ = 0;
  // Eager partners; 32-bit storage when every stub index fits.
  std::vector<std::uint32_t> partner_narrow_;
  std::vector<StubId> partner_wide_;
  StubId eager_partner(StubId s) const {
    return partner_narrow_.empty() ? partner_wide_[s] : partner_narrow_[s];
  }
  detail::Fenwick pool_;         // lazy
  absl::flat_hash_map<NodeId, LazyNode> touched_;
};

// Writes one "u v" line per revealed edge, 1-based node ids; self-loops as "u u".
void write_edge_list(const Matching& m, std::ostream& out);

}  // namespace cmhop
