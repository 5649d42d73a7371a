#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace dpa {

/// Counts of nodes per (in-degree, out-degree) cell. Small degrees (the hot
/// region: windows, and under moderate attachment rates practically every
/// node) live in a dense block; rare large-degree cells spill into a hash
/// map, keeping the grid logically unbounded.
class CountGrid {
 public:
  static constexpr int kDenseDim = 128;

  CountGrid() : dense_(std::size_t(kDenseDim) * kDenseDim, 0) {}

  void inc(int i, int j) {
    ++total_;
    if (i < kDenseDim && j < kDenseDim) {
      ++dense_[std::size_t(i) * kDenseDim + j];
    } else {
      ++overflow_[key(i, j)];
    }
  }

  void dec(int i, int j) {
    --total_;
    if (i < kDenseDim && j < kDenseDim) {
      --dense_[std::size_t(i) * kDenseDim + j];
    } else {
      auto it = overflow_.find(key(i, j));
      if (--it->second == 0) overflow_.erase(it);
    }
  }

  std::uint64_t at(int i, int j) const {
    if (i < 0 || j < 0) return 0;
    if (i < kDenseDim && j < kDenseDim) {
      return dense_[std::size_t(i) * kDenseDim + j];
    }
    auto it = overflow_.find(key(i, j));
    return it == overflow_.end() ? 0 : it->second;
  }

  std::uint64_t total() const noexcept { return total_; }

  /// All nonzero cells as (i, j, count), sorted lexicographically.
  std::vector<std::array<std::uint64_t, 3>> nonzero() const;

  friend bool operator==(const CountGrid& a, const CountGrid& b) {
    return a.total_ == b.total_ && a.dense_ == b.dense_ &&
           a.overflow_ == b.overflow_;
  }

 private:
  static std::uint64_t key(int i, int j) {
    return (std::uint64_t(std::uint32_t(i)) << 32) | std::uint32_t(j);
  }

  std::vector<std::uint32_t> dense_;
  std::unordered_map<std::uint64_t, std::uint32_t> overflow_;
  std::uint64_t total_ = 0;
};

}  // namespace dpa
