#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cmhop::detail {

// Binary indexed tree over non-negative 64-bit weights with weighted lookup.
class Fenwick {
 public:
  Fenwick() = default;

  explicit Fenwick(std::span<const std::uint64_t> weights) : tree_(weights.size() + 1, 0) {
    for (std::size_t i = 0; i < weights.size(); ++i) tree_[i + 1] = weights[i];
    for (std::size_t i = 1; i < tree_.size(); ++i) {
      const std::size_t parent = i + (i & (~i + 1));
      if (parent < tree_.size()) tree_[parent] += tree_[i];
    }
    top_bit_ = 1;
    while ((top_bit_ << 1) < tree_.size()) top_bit_ <<= 1;
  }

  std::size_t size() const noexcept { return tree_.empty() ? 0 : tree_.size() - 1; }

  void subtract(std::size_t index, std::uint64_t amount) noexcept {
    for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] -= amount;
  }

  // Smallest index whose inclusive prefix sum exceeds target.
  std::size_t find(std::uint64_t target) const noexcept {
    std::size_t pos = 0;
    for (std::size_t step = top_bit_; step != 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= target) {
        pos = next;
        target -= tree_[next];
      }
    }
    return pos;
  }

 private:
  std::vector<std::uint64_t> tree_;
  std::size_t top_bit_ = 0;
};

}  // namespace cmhop::detail
