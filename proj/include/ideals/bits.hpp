#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace ideals {

/// Bit mask over a universe of at most 64 elements (vertices, coordinates, edges).
using Mask = std::uint64_t;

inline constexpr int kMaxUniverse = 64;

constexpr int popcount(Mask m) noexcept { return std::popcount(m); }

constexpr Mask bit(int i) noexcept { return Mask{1} << i; }

constexpr Mask low_bits(int count) noexcept {
  return count >= 64 ? ~Mask{0} : (Mask{1} << count) - 1;
}

constexpr bool contains(Mask m, int i) noexcept { return (m >> i) & 1U; }

inline std::vector<int> to_indices(Mask m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(popcount(m)));
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

template <typename Range>
Mask from_indices(const Range& indices) {
  Mask m = 0;
  for (int i : indices) m |= bit(i);
  return m;
}

}  // namespace ideals
