#include <algorithm>

#include "cmhop/distance.hpp"
#include "cmhop/errors.hpp"
#include "cmhop/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cmhop;

namespace {

using Edges = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

std::uint32_t eccentricity(std::size_t n, const Edges& edges, std::uint32_t a) {
  std::uint32_t ecc = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    auto d = oracle::bfs_distance(n, edges, a, v);
    if (d != oracle::kUnreachable) ecc = std::max(ecc, d);
  }
  return ecc;
}

// Exact expected answer under the cutoff contract.
Hopcount expected(std::size_t n, const Edges& edges, std::uint32_t a, std::uint32_t b,
                  std::uint32_t cutoff) {
  auto d = oracle::bfs_distance(n, edges, a, b);
  if (d <= cutoff) return Hopcount::finite(d);
  if (d == oracle::kUnreachable &&
      std::min(eccentricity(n, edges, a), eccentricity(n, edges, b)) < cutoff) {
    return Hopcount::infinite();
  }
  return Hopcount::exceeds(cutoff);
}

// Sparse sequences with long chains and several components.
DegreeSequence sparse_sequence(std::size_t n, RngStream& rng) {
  std::vector<Degree> d(n);
  for (auto& x : d) {
    const double u = rng.uniform_open01();
    x = u < 0.3 ? 1 : (u < 0.92 ? 2 : 3 + rng.uniform_below(3));
  }
  return make_sequence(std::move(d));
}

}  // namespace

TEST_CASE("hand-built graphs") {
  // Path 0-1-2-3 and an isolated self-loop node 4.
  std::vector<Degree> d{1, 2, 2, 1, 2};
  std::vector<StubPair> pairs{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  RngStream rng(1);
  auto m = Matching::from_pairs(d, pairs);
  CHECK(hopcount(m, 0, 3, 10, rng) == Hopcount::finite(3));
  CHECK(bidirectional_hopcount(m, 0, 3, 10, rng) == Hopcount::finite(3));
  CHECK(hopcount(m, 0, 3, 2, rng) == Hopcount::exceeds(2));
  CHECK(bidirectional_hopcount(m, 3, 0, 2, rng) == Hopcount::exceeds(2));
  CHECK(hopcount(m, 0, 4, 10, rng) == Hopcount::infinite());
  CHECK(bidirectional_hopcount(m, 0, 4, 10, rng) == Hopcount::infinite());
  // From the isolated node, exhaustion shows up immediately.
  CHECK(hopcount(m, 4, 0, 2, rng) == Hopcount::infinite());
  CHECK(hopcount(m, 2, 2, 10, rng) == Hopcount::finite(0));
  CHECK_THROWS_AS(hopcount(m, 0, 9, 10, rng), InputError);
}

TEST_CASE("labels") {
  CHECK(Hopcount::finite(3).label() == "3");
  CHECK(Hopcount::infinite().label() == "inf");
  CHECK(Hopcount::exceeds(10).label() == ">10");
  CHECK(Hopcount::finite(3).at_most(3));
  CHECK_FALSE(Hopcount::exceeds(10).at_most(12));
}

TEST_CASE("both searches agree with brute-force BFS on eager graphs") {
  int checked = 0, non_finite = 0;
  for (std::uint64_t r = 0; r < 4000; ++r) {
    RngStream rng(derive_stream_seed(314, 0, r));
    auto seq = sparse_sequence(6 + rng.uniform_below(40), rng);
    auto m = Matching::build_eager(seq, rng);
    auto edges = oracle::node_edges(m);
    const auto n = static_cast<std::uint32_t>(seq.size());
    const std::uint32_t a = rng.uniform_below(n), b = rng.uniform_below(n);
    for (std::uint32_t cutoff : {3u, 6u, 10u}) {
      auto want = expected(n, edges, a, b, cutoff);
      CAPTURE(r);
      CAPTURE(cutoff);
      CHECK(hopcount(m, a, b, cutoff, rng) == want);
      CHECK(bidirectional_hopcount(m, a, b, cutoff, rng) == want);
      CHECK(bidirectional_hopcount(m, b, a, cutoff, rng) == want);
      ++checked;
      non_finite += !want.is_finite();
    }
  }
  // The generator must exercise both sentinels.
  CHECK(non_finite > 500);
  CHECK(checked == 12000);
}

TEST_CASE("lazy answers agree with BFS on the completed graph") {
  for (std::uint64_t r = 0; r < 3000; ++r) {
    RngStream rng(derive_stream_seed(271, 0, r));
    auto seq = sparse_sequence(6 + rng.uniform_below(40), rng);
    const auto n = static_cast<std::uint32_t>(seq.size());
    const std::uint32_t a = rng.uniform_below(n), b = rng.uniform_below(n);
    const std::uint32_t cutoff = 2 + rng.uniform_below(9);
    const bool bidi = r % 2 == 0;

    auto m = Matching::make_lazy(seq);
    auto got = bidi ? bidirectional_hopcount(m, a, b, cutoff, rng) : hopcount(m, a, b, cutoff, rng);
    for (NodeId v = 0; v < n; ++v) m.neighbors(v, rng);
    CAPTURE(r);
    CHECK(got == expected(n, oracle::node_edges(m), a, b, cutoff));
  }
}

TEST_CASE("lazy search reveals only part of a large graph") {
  auto law = DegreeLaw::power_law(1.8);
  RngStream rng(derive_stream_seed(9, 0, 0));
  auto seq = sample_sequence(law, 100000, rng);
  auto m = Matching::make_lazy(seq);
  auto h = bidirectional_hopcount(m, 0, 1, kDefaultCutoff, rng);
  CHECK(h.is_finite());
  CHECK(m.unrevealed_total() > m.stub_count() / 2);
}

TEST_CASE("metric properties on eager power-law graphs") {
  auto law = DegreeLaw::power_law(1.5);
  law.set_degree_cap(2000.0);
  for (std::uint64_t r = 0; r < 200; ++r) {
    RngStream rng(derive_stream_seed(55, 0, r));
    auto seq = sample_sequence(law, 200, rng);
    auto m = Matching::build_eager(seq, rng);
    const std::uint32_t a = rng.uniform_below(200), b = rng.uniform_below(200),
                        c = rng.uniform_below(200);
    auto ab = hopcount(m, a, b, 10, rng), ba = hopcount(m, b, a, 10, rng);
    auto bc = hopcount(m, b, c, 10, rng), ac = hopcount(m, a, c, 10, rng);
    CHECK(ab == ba);
    if (ab.is_finite() && bc.is_finite() && ab.value + bc.value <= 10) {
      CHECK(ac.at_most(ab.value + bc.value));
    }
  }
}

TEST_CASE("self-loops do not change distances") {
  // Path 0-1-2, then the same path with an extra loop at node 1.
  std::vector<Degree> d1{1, 2, 1};
  std::vector<StubPair> p1{{0, 1}, {2, 3}};
  std::vector<Degree> d2{1, 4, 1};
  std::vector<StubPair> p2{{0, 1}, {2, 3}, {4, 5}};
  RngStream rng(2);
  auto m1 = Matching::from_pairs(d1, p1);
  auto m2 = Matching::from_pairs(d2, p2);
  CHECK(hopcount(m1, 0, 2, 10, rng) == hopcount(m2, 0, 2, 10, rng));
  CHECK(bidirectional_hopcount(m2, 0, 2, 10, rng) == Hopcount::finite(2));
}
