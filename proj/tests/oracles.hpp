#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls the library routine it is meant to check.

#include <bit>
#include <cstdint>
#include <vector>

namespace oracle {

/// Whether some k distinct n-subsets of an m-set cover it and have empty
/// common intersection, by exhaustive search over bitmasks.
inline bool spread_exists(unsigned k, unsigned m, unsigned n) {
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    if (static_cast<unsigned>(std::popcount(s)) == n) subsets.push_back(s);
  }
  if (subsets.size() < k) return false;
  const std::uint32_t full = (1u << m) - 1;
  // picked: number chosen; cover: union so far; common: intersection so far.
  auto search = [&](auto&& self, std::size_t from, unsigned picked, std::uint32_t cover, std::uint32_t common) -> bool {
    if (picked == k) return cover == full && common == 0;
    const unsigned left = k - picked;
    if (subsets.size() - from < left) return false;
    if (static_cast<unsigned>(std::popcount(full & ~cover)) > left * n) return false;
    if (static_cast<unsigned>(std::popcount(common)) > left * (m - n)) return false;
    for (std::size_t i = from; i < subsets.size(); ++i) {
      if (self(self, i + 1, picked + 1, cover | subsets[i], common & subsets[i])) return true;
    }
    return false;
  };
  return search(search, 0, 0, 0, full);
}

}  // namespace oracle
