#pragma once

#include <cstdint>
#include <string>

#include "cmhop/matching.hpp"
#include "cmhop/rng.hpp"

namespace cmhop {

inline constexpr std::uint32_t kDefaultCutoff = 10;

// Graph distance with two sentinels:
//   infinite         - no path, and an endpoint's component was exhausted
//                      before depth `cutoff`;
//   exceeds_cutoff   - no path of length <= cutoff, nothing proven beyond.
struct Hopcount {
  enum class Kind { finite, infinite, exceeds_cutoff };

  Kind kind = Kind::finite;
  std::uint32_t value = 0;  // distance if finite, the cutoff if exceeds_cutoff

  static Hopcount finite(std::uint32_t d) { return {Kind::finite, d}; }
  static Hopcount infinite() { return {Kind::infinite, 0}; }
  static Hopcount exceeds(std::uint32_t cutoff) { return {Kind::exceeds_cutoff, cutoff}; }

  bool is_finite() const noexcept { return kind == Kind::finite; }
  // True when the distance is known to be at most d.
  bool at_most(std::uint32_t d) const noexcept { return is_finite() && value <= d; }

  // "3", "inf", ">10".
  std::string label() const;

  friend bool operator==(const Hopcount&, const Hopcount&) = default;
};

// Level-synchronous BFS from a, stopping as soon as b is discovered.
// In lazy mode stubs are revealed only as the frontier expands.
Hopcount hopcount(Matching& m, NodeId a, NodeId b, std::uint32_t cutoff, RngStream& rng);

// Same contract; grows the cheaper frontier (by total degree) from either side.
Hopcount bidirectional_hopcount(Matching& m, NodeId a, NodeId b, std::uint32_t cutoff,
                                RngStream& rng);

}  // namespace cmhop
