#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sadi/cards.hpp"
#include "sadi/errors.hpp"
#include "sadi/rng.hpp"

namespace sadi {

/// A map f from `domain` to n-subsets of `codomain`; image[i] = f(domain[i]).
struct BasicSpread {
  std::vector<Card> domain;
  CardSet codomain;
  std::size_t n = 0;
  std::vector<CardSet> image;

  const CardSet& operator()(Card y) const {
    const auto it = std::find(domain.begin(), domain.end(), y);
    if (it == domain.end()) throw InvalidArgument("spread: " + std::to_string(y) + " is not in the domain");
    return image[static_cast<std::size_t>(it - domain.begin())];
  }
};

struct SpreadConditions {
  bool injection = false;
  bool coverage = false;
  bool avoidance = false;

  bool all() const { return injection && coverage && avoidance; }
};

/// The three conditions under which a spread from k elements into n-subsets
/// of an m-set exists: C(m,n) >= k, nk >= m, (k-1)m >= nk.
inline SpreadConditions spread_conditions(std::size_t k, std::size_t m, std::size_t n) {
  if (k < 1 || m < 1 || n < 1) throw InvalidArgument("spread_conditions: k, m, n must be positive");
  SpreadConditions c;
  try {
    c.injection = binomial(m, n) >= k;
  } catch (const OverflowError&) {
    c.injection = true;
  }
  c.coverage = n * k >= m;
  c.avoidance = (k - 1) * m >= n * k;
  return c;
}

namespace detail {

inline CardSet random_subset(const CardSet& pool, std::size_t n, Rng& rng) {
  return CardSet(rng.sample(pool.cards(), n));
}

/// Extends `image` with random n-subsets of `pool` until it has `target`
/// distinct members.
inline void extend_injectively(std::vector<CardSet>& image, const CardSet& pool, std::size_t n, std::size_t target,
                               Rng& rng) {
  constexpr std::uint64_t kListLimit = 20000;
  std::uint64_t available = kListLimit + 1;
  try {
    available = binomial(pool.size(), n);
  } catch (const OverflowError&) {
  }
  if (available <= kListLimit) {
    std::vector<CardSet> unused;
    for_each_combination(pool.cards(), n, [&](const std::vector<Card>& c) {
      CardSet s(c);
      if (std::find(image.begin(), image.end(), s) == image.end()) unused.push_back(std::move(s));
      return true;
    });
    const auto picked = rng.sample(std::move(unused), target - image.size());
    image.insert(image.end(), picked.begin(), picked.end());
    return;
  }
  while (image.size() < target) {
    CardSet s = random_subset(pool, n, rng);
    if (std::find(image.begin(), image.end(), s) == image.end()) image.push_back(std::move(s));
  }
}

inline std::string failed_spread_condition(const SpreadConditions& c) {
  if (!c.injection) return "injection C(m,n) >= k";
  if (!c.coverage) return "coverage nk >= m";
  return "avoidance (k-1)m >= nk";
}

}  // namespace detail

/// A spread from Y = {1..k} into n-subsets of Z = {1..m}. The first q values
/// are the cyclic blocks {((i-1)n+j)_m : 1 <= j <= n} (or, when 2n > m,
/// complements of such blocks of size m-n); the remaining values are drawn
/// at random so that f stays injective.
inline BasicSpread build_spread(std::size_t k, std::size_t m, std::size_t n, Rng& rng) {
  const SpreadConditions c = spread_conditions(k, m, n);
  if (!c.all()) {
    throw PreconditionError("build_spread(" + std::to_string(k) + "," + std::to_string(m) + "," + std::to_string(n) +
                            "): " + detail::failed_spread_condition(c) + " fails");
  }
  BasicSpread f;
  f.n = n;
  f.codomain = CardSet::range(1, static_cast<Card>(m) + 1);
  for (std::size_t y = 1; y <= k; ++y) f.domain.push_back(static_cast<Card>(y));

  const bool complement = 2 * n > m;
  const std::size_t block = complement ? m - n : n;
  const std::size_t q = (m + block - 1) / block;
  for (std::size_t i = 1; i <= q; ++i) {
    std::vector<Card> cards;
    for (std::size_t j = 1; j <= block; ++j) cards.push_back(static_cast<Card>(((i - 1) * block + j - 1) % m + 1));
    CardSet s(std::move(cards));
    f.image.push_back(complement ? f.codomain - s : s);
  }
  detail::extend_injectively(f.image, f.codomain, n, k, rng);
  return f;
}

inline BasicSpread build_spread(std::size_t k, std::size_t m, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return build_spread(k, m, n, rng);
}

/// Injection, Coverage and Avoidance, checked extensionally.
inline bool verify_spread(const BasicSpread& f) {
  if (f.image.size() != f.domain.size() || f.domain.empty()) return false;
  std::vector<Card> dom = f.domain;
  std::sort(dom.begin(), dom.end());
  if (std::adjacent_find(dom.begin(), dom.end()) != dom.end()) return false;
  CardSet all;
  CardSet common = f.image.front();
  for (std::size_t i = 0; i < f.image.size(); ++i) {
    const CardSet& s = f.image[i];
    if (s.size() != f.n || !s.is_subset_of(f.codomain)) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (f.image[j] == s) return false;
    }
    all = all | s;
    common = common & s;
  }
  return all == f.codomain && common.empty();
}

/// A random spread from `domain` into |pinned_image|-subsets of `codomain`
/// with f(pin) = pinned_image: the construction above relabeled so that
/// Y-element 1 becomes `pin` and f(1) becomes `pinned_image`.
inline BasicSpread pinned_spread(const CardSet& domain, Card pin, const CardSet& codomain,
                                 const CardSet& pinned_image, Rng& rng) {
  if (!domain.contains(pin)) throw InvalidArgument("pinned_spread: pin is not in the domain");
  if (!pinned_image.is_subset_of(codomain)) throw InvalidArgument("pinned_spread: pinned image outside codomain");
  const BasicSpread base = build_spread(domain.size(), codomain.size(), pinned_image.size(), rng);

  std::vector<Card> others = (domain - CardSet{pin}).cards();
  rng.shuffle(others);
  std::vector<Card> first = pinned_image.cards();
  std::vector<Card> rest = (codomain - pinned_image).cards();
  rng.shuffle(first);
  rng.shuffle(rest);

  std::map<Card, Card> sigma;
  std::size_t fi = 0;
  std::size_t ri = 0;
  for (Card z : base.codomain) sigma[z] = base.image[0].contains(z) ? first[fi++] : rest[ri++];

  BasicSpread f;
  f.n = base.n;
  f.codomain = codomain;
  f.domain.push_back(pin);
  f.domain.insert(f.domain.end(), others.begin(), others.end());
  for (const CardSet& s : base.image) {
    std::vector<Card> mapped;
    for (Card z : s) mapped.push_back(sigma.at(z));
    f.image.emplace_back(std::move(mapped));
  }
  return f;
}

/// Calls fn on every spread from `domain` into |pinned_image|-subsets of
/// `codomain` with f(pin) = pinned_image; the pin comes first in each
/// domain, the rest in increasing order. Stops when fn returns false.
template <typename Fn>
void for_each_pinned_spread(const CardSet& domain, Card pin, const CardSet& codomain, const CardSet& pinned_image,
                            Fn&& fn) {
  std::vector<CardSet> candidates;
  for_each_combination(codomain.cards(), pinned_image.size(), [&](const std::vector<Card>& c) {
    CardSet s(c);
    if (s != pinned_image) candidates.push_back(std::move(s));
    return true;
  });
  BasicSpread f;
  f.n = pinned_image.size();
  f.codomain = codomain;
  f.domain.push_back(pin);
  for (Card y : domain) {
    if (y != pin) f.domain.push_back(y);
  }
  f.image.assign(f.domain.size(), CardSet{});
  f.image[0] = pinned_image;
  std::vector<bool> used(candidates.size(), false);
  auto rec = [&](auto&& self, std::size_t i, const CardSet& cover, const CardSet& common) -> bool {
    if (i == f.domain.size()) return cover != codomain || !common.empty() ? true : fn(static_cast<const BasicSpread&>(f));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      used[c] = true;
      f.image[i] = candidates[c];
      const bool go_on = self(self, i + 1, cover | candidates[c], common & candidates[c]);
      used[c] = false;
      if (!go_on) return false;
    }
    return true;
  };
  rec(rec, 1, pinned_image, pinned_image);
}

}  // namespace sadi
