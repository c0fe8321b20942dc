#include <cmath>
#include <map>
#include <sstream>

#include "cmhop/errors.hpp"
#include "cmhop/matching.hpp"
#include "cmhop/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cmhop;

namespace {

std::map<std::vector<StubPair>, int> tally(const std::vector<Degree>& degrees, bool lazy, int runs,
                                           std::uint64_t seed) {
  std::map<std::vector<StubPair>, int> counts;
  auto seq = make_sequence(degrees);
  for (int r = 0; r < runs; ++r) {
    RngStream rng(derive_stream_seed(seed, 0, r));
    auto m = lazy ? Matching::make_lazy(seq) : Matching::build_eager(seq, rng);
    if (lazy) {
      for (NodeId v = 0; v < m.node_count(); ++v) m.neighbors(v, rng);
    }
    REQUIRE(m.unrevealed_total() == 0);
    ++counts[m.revealed_pairs()];
  }
  return counts;
}

}  // namespace

TEST_CASE("six stubs: all fifteen matchings equally likely") {
  for (bool lazy : {false, true}) {
    const int runs = 150000;
    auto counts = tally({1, 1, 1, 1, 1, 1}, lazy, runs, lazy ? 11 : 12);
    CHECK(counts.size() == oracle::matchings_count(6));
    const double p = 1.0 / 15, se = std::sqrt(p * (1 - p) / runs);
    for (auto& [pairs, c] : counts) {
      CAPTURE(lazy);
      CHECK(std::fabs(c / double(runs) - p) <= 4 * se);
    }
  }
}

TEST_CASE("eight stubs over uneven degrees pass a chi-square uniformity test") {
  for (bool lazy : {false, true}) {
    const int runs = 105 * 400;
    auto counts = tally({2, 1, 3, 2}, lazy, runs, lazy ? 21 : 22);
    REQUIRE(counts.size() == 105);
    const double expected = runs / 105.0;
    double stat = 0;
    for (auto& [pairs, c] : counts) stat += (c - expected) * (c - expected) / expected;
    CAPTURE(lazy);
    CHECK(oracle::chi_square_sf(stat, 104) > 1e-3);
  }
}

TEST_CASE("chi-square oracle sanity") {
  CHECK(oracle::chi_square_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(oracle::chi_square_sf(124.342, 100) == doctest::Approx(0.05).epsilon(1e-3));
}

TEST_CASE("stub ownership and partners are consistent") {
  auto seq = make_sequence({3, 1, 4, 2});
  RngStream rng(5);
  auto m = Matching::build_eager(seq, rng);
  CHECK(m.stub_count() == 10);
  CHECK(m.owner(0) == 0);
  CHECK(m.owner(2) == 0);
  CHECK(m.owner(3) == 1);
  CHECK(m.owner(4) == 2);
  CHECK(m.owner(9) == 3);
  for (StubId s = 0; s < 10; ++s) {
    auto p = m.partner(s);
    REQUIRE(p);
    CHECK(*p != s);
    CHECK(m.partner(*p) == s);
  }
  auto nb = m.neighbors(2, rng);
  CHECK(nb.size() == 4);
}

TEST_CASE("lazy reveal bookkeeping") {
  auto seq = make_sequence({2, 2, 2});
  auto m = Matching::make_lazy(seq);
  RngStream rng(8);
  CHECK(m.unrevealed_total() == 6);
  CHECK_FALSE(m.partner(0));
  auto t = m.reveal_partner(0, rng);
  CHECK(t != 0);
  CHECK(m.is_revealed(0));
  CHECK(m.is_revealed(t));
  CHECK(m.partner(t) == StubId{0});
  CHECK(m.unrevealed_total() == 4);
  CHECK_THROWS_AS(m.reveal_partner(0, rng), UsageError);

  while (m.reveal_next(1, rng)) {
  }
  CHECK(m.unrevealed_count(1) == 0);
  CHECK_FALSE(m.reveal_next(1, rng));
}

TEST_CASE("eager matchings refuse lazy operations") {
  auto seq = make_sequence({1, 1});
  RngStream rng(1);
  auto m = Matching::build_eager(seq, rng);
  CHECK_THROWS_AS(m.reveal_partner(0, rng), UsageError);
  CHECK_FALSE(m.reveal_next(0, rng));
}

TEST_CASE("explicit pairs") {
  std::vector<Degree> d{2, 1, 1};
  std::vector<StubPair> ok{{0, 1}, {2, 3}};
  auto m = Matching::from_pairs(d, ok);
  std::ostringstream out;
  write_edge_list(m, out);
  CHECK(out.str() == "1 1\n2 3\n");

  std::vector<StubPair> dup{{0, 1}, {1, 3}};
  CHECK_THROWS_AS(Matching::from_pairs(d, dup), InputError);
  std::vector<StubPair> short_list{{0, 1}};
  CHECK_THROWS_AS(Matching::from_pairs(d, short_list), InputError);
}

TEST_CASE("resource and input limits") {
  RngStream rng(3);
  DegreeSequence odd{{1, 2}, false, false};
  CHECK_THROWS_AS(Matching::make_lazy(odd), InputError);
  auto big = make_sequence({600, 600});
  CHECK_THROWS_AS(Matching::build_eager(big, rng, 1000), ResourceError);
  CHECK_THROWS_AS(Matching::make_lazy(big, 1000), ResourceError);
  CHECK_THROWS_AS(Matching::build_eager(big, rng, kDefaultEagerStubCap, 1024), ResourceError);
  CHECK_NOTHROW(Matching::build_eager(big, rng));
}
