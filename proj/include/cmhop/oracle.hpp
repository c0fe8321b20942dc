#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cmhop/degree_model.hpp"
#include "cmhop/distance.hpp"
#include "cmhop/matching.hpp"

namespace cmhop {

inline constexpr std::uint64_t kOracleMaxStubs = 12;

// Calls f for each of the (L-1)!! perfect matchings of L stubs (L even).
void for_each_perfect_matching(std::uint64_t stubs, const std::function<void(std::span<const StubPair>)>& f);

struct ExactDistribution {
  std::uint64_t matchings = 0;
  // hopcount label -> number of matchings
  std::map<std::string, std::uint64_t> hopcount;
  // multigraph as sorted "u-v" edge list (1-based) -> number of matchings
  std::map<std::string, std::uint64_t> multigraphs;
};

// Exhaustive enumeration for small degree sequences (L <= 12).
ExactDistribution exact_distribution(std::span<const Degree> degrees, NodeId a = 0, NodeId b = 1,
                                     std::uint32_t cutoff = kDefaultCutoff);

}  // namespace cmhop
