#include "cmhop/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <new>
#include <ostream>
#include <string>

#include "cmhop/errors.hpp"

namespace cmhop {

std::vector<std::uint64_t> Matching::prefix_offsets(std::span<const Degree> degrees,
                                                    std::uint64_t stub_cap) {
  if (degrees.empty()) throw InputError("degree sequence is empty");
  if (degrees.size() >= std::numeric_limits<NodeId>::max()) {
    throw InputError("too many nodes for 32-bit node ids");
  }
  std::vector<std::uint64_t> offsets(degrees.size() + 1, 0);
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (__builtin_add_overflow(offsets[i], degrees[i], &offsets[i + 1]) ||
        offsets[i + 1] > stub_cap) {
      throw ResourceError("total stub count exceeds the stub cap of " + std::to_string(stub_cap) +
                          " (lazy mode or a larger cap may help)");
    }
  }
  const std::uint64_t total = offsets.back();
  if (total < 2 || total % 2 != 0) {
    throw InputError("total degree must be even and at least 2, got " + std::to_string(total));
  }
  return offsets;
}

Matching::Matching(MatchingMode mode, std::vector<std::uint64_t> offsets)
    : mode_(mode), offsets_(std::move(offsets)) {}

template <class Word>
void Matching::shuffle_pairs(std::vector<Word>& partner, RngStream& rng) {
  const std::uint64_t total = stub_count();
  // Uniform shuffle, then pair consecutive entries.
  std::vector<Word> order(total);
  std::iota(order.begin(), order.end(), Word{0});
  for (std::uint64_t i = total - 1; i > 0; --i) {
    std::swap(order[i], order[rng.uniform_below(i + 1)]);
  }
  partner.resize(total);
  for (std::uint64_t i = 0; i < total; i += 2) {
    partner[order[i]] = order[i + 1];
    partner[order[i + 1]] = order[i];
  }
}

Matching Matching::build_eager(const DegreeSequence& seq, RngStream& rng,
                               std::uint64_t stub_cap, std::uint64_t memory_budget) {
  Matching m(MatchingMode::eager, prefix_offsets(seq.degrees, stub_cap));
  const bool narrow = m.stub_count() <= std::numeric_limits<std::uint32_t>::max();
  // Shuffle order plus partner array.
  const long double bytes = static_cast<long double>(m.stub_count()) * (narrow ? 8 : 16);
  if (bytes > static_cast<long double>(memory_budget)) {
    throw ResourceError(std::to_string(m.stub_count()) + " stubs exceed the eager memory budget of " +
                        std::to_string(memory_budget) + " bytes (lazy mode may help)");
  }
  try {
    if (narrow) {
      m.shuffle_pairs(m.partner_narrow_, rng);
    } else {
      m.shuffle_pairs(m.partner_wide_, rng);
    }
  } catch (const std::bad_alloc&) {
    throw ResourceError("not enough memory to materialize " + std::to_string(m.stub_count()) +
                        " stubs (lazy mode may help)");
  }
  return m;
}

Matching Matching::make_lazy(const DegreeSequence& seq, std::uint64_t stub_cap) {
  Matching m(MatchingMode::lazy, prefix_offsets(seq.degrees, stub_cap));
  m.pool_ = detail::Fenwick(seq.degrees);
  m.unrevealed_total_ = m.stub_count();
  return m;
}

Matching Matching::from_pairs(std::span<const Degree> degrees, std::span<const StubPair> pairs) {
  Matching m(MatchingMode::eager, prefix_offsets(degrees, std::numeric_limits<std::uint64_t>::max()));
  const std::uint64_t total = m.stub_count();
  constexpr StubId kUnset = std::numeric_limits<StubId>::max();
  m.partner_wide_.assign(total, kUnset);
  for (const auto& [s, t] : pairs) {
    if (s >= total || t >= total || s == t) throw InputError("invalid stub pair");
    if (m.partner_wide_[s] != kUnset || m.partner_wide_[t] != kUnset) {
      throw InputError("stub paired twice");
    }
    m.partner_wide_[s] = t;
    m.partner_wide_[t] = s;
  }
  if (std::find(m.partner_wide_.begin(), m.partner_wide_.end(), kUnset) != m.partner_wide_.end()) {
    throw InputError("pairs do not cover every stub");
  }
  return m;
}

NodeId Matching::owner(StubId s) const {
  if (s >= stub_count()) throw InputError("stub index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), s);
  return static_cast<NodeId>(it - offsets_.begin() - 1);
}

Matching::LazyNode& Matching::touch(NodeId v) {
  auto [it, inserted] = touched_.try_emplace(v);
  if (inserted) it->second.remaining = degree(v);
  return it->second;
}

StubId Matching::slot_at(const LazyNode& node, NodeId v, std::uint64_t pos) const {
  const auto it = node.slot.find(pos);
  return it == node.slot.end() ? offsets_[v] + pos : it->second;
}

std::uint64_t Matching::position_of(const LazyNode& node, NodeId v, StubId s) const {
  const auto it = node.where.find(s);
  return it == node.where.end() ? s - offsets_[v] : it->second;
}

StubId Matching::take_at(NodeId v, std::uint64_t pos) {
  LazyNode& node = touch(v);
  const std::uint64_t last = node.remaining - 1;
  const StubId taken = slot_at(node, v, pos);
  if (pos != last) {
    const StubId moved = slot_at(node, v, last);
    node.slot[pos] = moved;
    node.where[moved] = pos;
  }
  node.slot.erase(last);
  node.where.erase(taken);
  --node.remaining;
  pool_.subtract(v, 1);
  --unrevealed_total_;
  return taken;
}

StubId Matching::pair_with_random(NodeId v, StubId s, RngStream& rng) {
  // s is already out of the pool, so this is uniform over the other stubs.
  const NodeId w = static_cast<NodeId>(pool_.find(rng.uniform_below(unrevealed_total_)));
  const std::uint64_t pos = rng.uniform_below(touch(w).remaining);
  const StubId t = take_at(w, pos);
  touch(v).revealed.push_back({s, t, w});
  touch(w).revealed.push_back({t, s, v});
  return t;
}

bool Matching::is_revealed(StubId s) const {
  if (mode_ == MatchingMode::eager) {
    if (s >= stub_count()) throw InputError("stub index out of range");
    return true;
  }
  const NodeId v = owner(s);
  const auto it = touched_.find(v);
  if (it == touched_.end()) return false;
  const LazyNode& node = it->second;
  const std::uint64_t pos = position_of(node, v, s);
  return !(pos < node.remaining && slot_at(node, v, pos) == s);
}

std::optional<StubId> Matching::partner(StubId s) const {
  if (mode_ == MatchingMode::eager) {
    if (s >= stub_count()) throw InputError("stub index out of range");
    return eager_partner(s);
  }
  if (!is_revealed(s)) return std::nullopt;
  for (const RevealedEnd& end : touched_.at(owner(s)).revealed) {
    if (end.own == s) return end.other;
  }
  return std::nullopt;
}

std::uint64_t Matching::unrevealed_count(NodeId v) const {
  if (mode_ == MatchingMode::eager) return 0;
  const auto it = touched_.find(v);
  return it == touched_.end() ? degree(v) : it->second.remaining;
}

StubId Matching::reveal_partner(StubId s, RngStream& rng) {
  if (mode_ != MatchingMode::lazy) throw UsageError("reveal_partner needs a lazy matching");
  if (is_revealed(s)) throw UsageError("stub " + std::to_string(s) + " is already revealed");
  const NodeId v = owner(s);
  take_at(v, position_of(touch(v), v, s));
  return pair_with_random(v, s, rng);
}

std::optional<NodeId> Matching::reveal_next(NodeId v, RngStream& rng) {
  if (mode_ != MatchingMode::lazy) return std::nullopt;
  const std::uint64_t left = unrevealed_count(v);
  if (left == 0) return std::nullopt;
  // Taking the last slot never creates overrides.
  const StubId s = take_at(v, left - 1);
  return owner(pair_with_random(v, s, rng));
}

void Matching::for_each_revealed_neighbor(NodeId v, const std::function<bool(NodeId)>& f) const {
  if (mode_ == MatchingMode::eager) {
    for (StubId s = offsets_[v]; s < offsets_[v + 1]; ++s) {
      if (!f(owner(eager_partner(s)))) return;
    }
    return;
  }
  const auto it = touched_.find(v);
  if (it == touched_.end()) return;
  for (const RevealedEnd& end : it->second.revealed) {
    if (!f(end.other_node)) return;
  }
}

std::vector<NodeId> Matching::neighbors(NodeId v, RngStream& rng) {
  while (reveal_next(v, rng)) {
  }
  std::vector<NodeId> out;
  out.reserve(degree(v));
  for_each_revealed_neighbor(v, [&](NodeId w) {
    out.push_back(w);
    return true;
  });
  return out;
}

std::vector<StubPair> Matching::revealed_pairs() const {
  std::vector<StubPair> pairs;
  if (mode_ == MatchingMode::eager) {
    for (StubId s = 0; s < stub_count(); ++s) {
      const StubId t = eager_partner(s);
      if (s < t) pairs.emplace_back(s, t);
    }
    return pairs;
  }
  for (const auto& [v, node] : touched_) {
    for (const RevealedEnd& end : node.revealed) {
      if (end.own < end.other) pairs.emplace_back(end.own, end.other);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

void write_edge_list(const Matching& m, std::ostream& out) {
  for (const auto& [s, t] : m.revealed_pairs()) {
    out << m.owner(s) + 1 << ' ' << m.owner(t) + 1 << '\n';
  }
}

}  // namespace cmhop
