#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "sadi/cards.hpp"
#include "sadi/errors.hpp"

namespace sadi {

enum class CoverVariant { kPart1, kPart2 };

/// Sets Y_1..Y_k over the ground set X = {0, ..., n-1}.
///
/// Part 1 (parameters n, a, k): |Y_i| = n - a, the Y_i cover X, no three
/// share an element and any two share at most 2.
/// Part 2 (parameters n, b, c): |Y_i| = b, the Y_i cover X and any two share
/// at most c + 1.
struct CoverFamily {
  CoverVariant variant = CoverVariant::kPart1;
  std::size_t n = 0;
  std::size_t p1 = 0;  ///< a (part 1) or b (part 2)
  std::size_t p2 = 0;  ///< k (part 1) or c (part 2)
  std::vector<CardSet> sets;
};

inline std::string cover_part1_violation(std::size_t n, std::size_t a, std::size_t k) {
  if (!(a < n)) return "a < n";
  if (!(k > 2)) return "k > 2";
  if (!(n >= k * k)) return "n >= k^2";
  if (!((k - 1) * (n - k) <= k * a)) return "(k-1)(n-k) <= ka";
  if (!(k * a <= (k - 1) * n)) return "ka <= (k-1)n";
  return {};
}

inline std::string cover_part2_violation(std::size_t n, std::size_t b, std::size_t c) {
  if (!(c >= 1)) return "c >= 1";
  if (!(b > c)) return "b > c";
  if (!(c * n > b * (b + c))) return "cn > b(b+c)";
  return {};
}

/// Elements of X laid out row by row in a table with k columns; column i
/// plus enough of row i (smallest column first, skipping column i) gives Y_i.
inline CoverFamily cover_part1(std::size_t n, std::size_t a, std::size_t k) {
  if (const auto v = cover_part1_violation(n, a, k); !v.empty()) {
    throw PreconditionError("cover_part1(" + std::to_string(n) + "," + std::to_string(a) + "," + std::to_string(k) +
                            "): " + v + " fails");
  }
  const std::size_t q = n / k;
  if (q < k) throw ProtocolDefect("cover_part1: table has fewer rows than columns (q < k)");
  auto x = [k](std::size_t column, std::size_t row) { return static_cast<Card>(row * k + column); };

  CoverFamily f{CoverVariant::kPart1, n, a, k, {}};
  const std::size_t target = n - a;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Card> y;
    for (std::size_t row = 0; static_cast<std::size_t>(x(i, row)) < n; ++row) y.push_back(x(i, row));
    if (y.size() > target || target - y.size() > k - 1) {
      throw ProtocolDefect("cover_part1: column " + std::to_string(i + 1) + " cannot be padded to n - a elements");
    }
    for (std::size_t column = 0; column < k && y.size() < target; ++column) {
      if (column != i) y.push_back(x(column, i));
    }
    f.sets.emplace_back(std::move(y));
  }
  return f;
}

/// Columns of height b give Y_1..Y_q; a short last column is topped up with
/// the smallest b - r elements of the first c rows.
inline CoverFamily cover_part2(std::size_t n, std::size_t b, std::size_t c) {
  if (const auto v = cover_part2_violation(n, b, c); !v.empty()) {
    throw PreconditionError("cover_part2(" + std::to_string(n) + "," + std::to_string(b) + "," + std::to_string(c) +
                            "): " + v + " fails");
  }
  const std::size_t q = n / b;
  const std::size_t r = n % b;
  auto x = [b](std::size_t row, std::size_t column) { return static_cast<Card>(column * b + row); };

  CoverFamily f{CoverVariant::kPart2, n, b, c, {}};
  for (std::size_t column = 0; column < q; ++column) {
    std::vector<Card> y;
    for (std::size_t row = 0; row < b; ++row) y.push_back(x(row, column));
    f.sets.emplace_back(std::move(y));
  }
  if (r > 0) {
    std::vector<Card> y;
    for (std::size_t row = 0; row < r; ++row) y.push_back(x(row, q));
    std::vector<Card> g;
    for (std::size_t column = 0; column < q; ++column) {
      for (std::size_t row = 0; row < c; ++row) g.push_back(x(row, column));
    }
    std::sort(g.begin(), g.end());
    if (g.size() < b - r) throw ProtocolDefect("cover_part2: too few elements to complete the last set");
    y.insert(y.end(), g.begin(), g.begin() + static_cast<std::ptrdiff_t>(b - r));
    f.sets.emplace_back(std::move(y));
  }
  return f;
}

/// Checks the family's invariants extensionally.
inline bool verify_cover(const CoverFamily& f) {
  if (f.sets.empty()) return false;
  const CardSet ground = CardSet::range(0, static_cast<Card>(f.n));
  const std::size_t size = f.variant == CoverVariant::kPart1 ? f.n - f.p1 : f.p1;
  const std::size_t max_overlap = f.variant == CoverVariant::kPart1 ? 2 : f.p2 + 1;
  if (f.variant == CoverVariant::kPart1 && f.sets.size() != f.p2) return false;
  CardSet all;
  for (std::size_t i = 0; i < f.sets.size(); ++i) {
    if (f.sets[i].size() != size || !f.sets[i].is_subset_of(ground)) return false;
    all = all | f.sets[i];
    for (std::size_t j = 0; j < i; ++j) {
      const CardSet both = f.sets[i] & f.sets[j];
      if (both.size() > max_overlap) return false;
      if (f.variant == CoverVariant::kPart1) {
        for (std::size_t l = 0; l < j; ++l) {
          if (!both.disjoint(f.sets[l])) return false;
        }
      }
    }
  }
  return all == ground;
}

}  // namespace sadi
