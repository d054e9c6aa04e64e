#pragma once

#include <cstdint>
#include <string>

#include "sadi/cards.hpp"
#include "sadi/errors.hpp"
#include "sadi/rational.hpp"

namespace sadi {

/// d = ((k-1)n - ak) / (k^2 - 3k + 1).
inline Rational less_big_d(std::int64_t a, std::int64_t k, std::int64_t n) {
  return Rational((k - 1) * n - a * k, k * k - 3 * k + 1);
}

struct SimpleBound {
  bool bound1_holds = false;
  bool bound2_holds = false;
  Rational lhs1, rhs1, lhs2, rhs2;
};

/// The two inequalities
///   n(k-m-1) / (m(k^2-3k+1)) <= n - a - d(k-2)
///   n(k(k/m - 2) + 1) / (k^2-3k+1) <= n - dk
/// evaluated exactly.
inline SimpleBound simple_bound_check(std::int64_t a, std::int64_t k, std::int64_t m, std::int64_t n) {
  if (a <= 0 || k <= 0 || m <= 0 || n <= 0) throw InvalidArgument("simple_bound_check: a, k, m, n must be positive");
  if (n > m * a) throw PreconditionError("simple_bound_check: n/m <= a fails");
  const std::int64_t q = k * k - 3 * k + 1;
  if (q <= 0) throw PreconditionError("simple_bound_check: k^2-3k+1 > 0 fails");
  const Rational d = less_big_d(a, k, n);
  SimpleBound b;
  b.lhs1 = Rational(n * (k - m - 1), m * q);
  b.rhs1 = Rational(n - a) - d * Rational(k - 2);
  b.lhs2 = Rational(n) * (Rational(k) * (Rational(k, m) - Rational(2)) + Rational(1)) / Rational(q);
  b.rhs2 = Rational(n) - d * Rational(k);
  b.bound1_holds = b.lhs1 <= b.rhs1;
  b.bound2_holds = b.lhs2 <= b.rhs2;
  return b;
}

struct LessBigConditions {
  Rational d;
  bool k_at_least_4 = false;
  bool alice_share = false;  ///< s_A >= |s|/m
  bool c1 = false;           ///< k s_P <= (k-1)|s| for every P
  bool c2 = false;           ///< (2k-1)(m-1) < |s| - s_A - d(k-2)
  bool c3 = false;           ///< |s| - dk >= k^2
  bool c4 = false;           ///< every holder >= k cards, save one with exactly k-1

  bool all() const { return k_at_least_4 && alice_share && c1 && c2 && c3 && c4; }

  std::string violation() const {
    if (!k_at_least_4) return "k >= 4";
    if (!alice_share) return "s_A >= |s|/m";
    if (!c1) return "condition 1: k s_P <= (k-1)|s|";
    if (!c2) return "condition 2: (2k-1)(m-1) < |s| - s_A - d(k-2)";
    if (!c3) return "condition 3: |s| - dk >= k^2";
    if (!c4) return "condition 4: every player holds k cards save one with k-1";
    return {};
  }
};

/// Conditions of the less-big recursion for `alice`, with m the number of
/// agents holding cards.
inline LessBigConditions less_big_conditions(const DistributionType& type, std::size_t k_, Agent alice) {
  LessBigConditions c;
  const auto n = static_cast<std::int64_t>(type.total());
  const auto k = static_cast<std::int64_t>(k_);
  const auto m = static_cast<std::int64_t>(type.holders().size());
  const auto a = static_cast<std::int64_t>(type.size(alice));
  c.k_at_least_4 = k >= 4;
  if (k < 3 || m == 0) return c;
  c.d = less_big_d(a, k, n);
  c.alice_share = m * a >= n;
  c.c1 = true;
  std::size_t short_hands = 0;
  c.c4 = true;
  for (Agent p : type.holders()) {
    const auto s = static_cast<std::int64_t>(type.size(p));
    if (k * s > (k - 1) * n) c.c1 = false;
    if (s == k - 1) {
      ++short_hands;
    } else if (s < k) {
      c.c4 = false;
    }
  }
  if (short_hands > 1) c.c4 = false;
  c.c2 = Rational((2 * k - 1) * (m - 1)) < Rational(n - a) - c.d * Rational(k - 2);
  c.c3 = Rational(n) - c.d * Rational(k) >= Rational(k * k);
  return c;
}

}  // namespace sadi
