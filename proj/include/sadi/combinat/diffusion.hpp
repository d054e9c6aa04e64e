#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "sadi/cards.hpp"
#include "sadi/errors.hpp"
#include "sadi/rng.hpp"

namespace sadi {

/// An ordered list of deals of one type; order matters for fusion.
using Diffusion = std::vector<Deal>;

/// Clause 1: distinct members give distinct hands to every agent holding
/// cards. Clause 2: every card changes owner somewhere in the set.
inline bool is_diffusion(const std::vector<Deal>& deals) {
  if (deals.empty()) return false;
  const DistributionType type = deals.front().type();
  for (const Deal& d : deals) {
    if (!d.has_type(type)) return false;
  }
  for (std::size_t i = 0; i < deals.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (deals[i] == deals[j]) return false;
      for (Agent p : type.holders()) {
        if (deals[i].hand(p) == deals[j].hand(p)) return false;
      }
    }
  }
  for (Card c : type.deck()) {
    const auto owner = deals.front().holder(c);
    const bool moves = std::any_of(deals.begin(), deals.end(), [&](const Deal& d) { return d.holder(c) != owner; });
    if (!moves) return false;
  }
  return true;
}

inline bool is_k_diffusion(const std::vector<Deal>& deals, std::size_t k) {
  return deals.size() == k && is_diffusion(deals);
}

/// Order-insensitive comparison of two deal lists.
inline bool same_deals(std::vector<Deal> a, std::vector<Deal> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// ---------------------------------------------------------------------------
// Two agents

struct TwoAgentParts {
  Agent small = 0;
  Agent large = 0;
};

/// The two card-holding agents of `type`, smaller hand first (lower index on
/// ties). Throws unless exactly two agents hold cards.
inline TwoAgentParts two_agent_parts(const DistributionType& type) {
  const auto holders = type.holders();
  if (holders.size() != 2) throw PreconditionError("two-agent diffusion needs exactly two agents holding cards");
  TwoAgentParts p{holders[0], holders[1]};
  if (type.size(p.large) < type.size(p.small)) std::swap(p.small, p.large);
  return p;
}

/// Empty when a k-diffusion of two-agent type (a, b) with a <= b is
/// guaranteed; otherwise the failed inequality.
inline std::string two_agent_violation(std::size_t a, std::size_t b, std::size_t k) {
  if (a > b) std::swap(a, b);
  if (k <= 1) return "k > 1";
  if (a == 0) return "both agents hold cards";
  std::uint64_t hands = 0;
  try {
    hands = binomial(a + b, a);
  } catch (const OverflowError&) {
    hands = UINT64_MAX;
  }
  if (k > hands) return "k <= C(a+b, a)";
  if (b > (k - 1) * a) return "b <= (k-1)a";
  return {};
}

/// A k-diffusion of the two-agent type of `actual` that contains `actual`,
/// listed first. The cyclic-block hands {((j-1)a+1)_d, ..., (ja)_d} for
/// j = 1..m (m least with am >= d) are laid over the deck by a random
/// relabeling that sends one randomly chosen block onto the actual small
/// hand; the other k - m small hands are random.
inline Diffusion two_agent_diffusion(const Deal& actual, std::size_t k, Rng& rng) {
  const DistributionType type = actual.type();
  const TwoAgentParts parts = two_agent_parts(type);
  const std::size_t a = type.size(parts.small);
  const std::size_t b = type.size(parts.large);
  if (const std::string v = two_agent_violation(a, b, k); !v.empty()) {
    throw PreconditionError("two_agent_diffusion(a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                            ", k=" + std::to_string(k) + "): " + v + " fails");
  }
  const std::size_t d = a + b;
  const std::size_t m = (d + a - 1) / a;

  std::vector<std::vector<std::size_t>> blocks(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < a; ++i) blocks[j].push_back((j * a + i) % d);
  }
  const std::size_t pinned = rng.index(m);

  std::vector<Card> small_cards = actual.hand(parts.small).cards();
  std::vector<Card> other_cards = actual.hand(parts.large).cards();
  rng.shuffle(small_cards);
  rng.shuffle(other_cards);
  std::vector<Card> label(d);
  std::vector<bool> in_pinned(d, false);
  for (std::size_t pos : blocks[pinned]) in_pinned[pos] = true;
  std::size_t si = 0;
  std::size_t oi = 0;
  for (std::size_t pos = 0; pos < d; ++pos) label[pos] = in_pinned[pos] ? small_cards[si++] : other_cards[oi++];

  std::vector<CardSet> hands;
  for (const auto& block : blocks) {
    std::vector<Card> cards;
    for (std::size_t pos : block) cards.push_back(label[pos]);
    hands.emplace_back(std::move(cards));
  }
  std::swap(hands[0], hands[pinned]);

  const CardSet deck = type.deck();
  std::set<CardSet> used(hands.begin(), hands.end());
  std::vector<CardSet> extra;
  if (k > m) {
    std::uint64_t total = UINT64_MAX;
    try {
      total = binomial(d, a);
    } catch (const OverflowError&) {
    }
    if (total <= 20000) {
      std::vector<CardSet> unused;
      for_each_combination(deck.cards(), a, [&](const std::vector<Card>& c) {
        CardSet s(c);
        if (!used.count(s)) unused.push_back(std::move(s));
        return true;
      });
      extra = rng.sample(std::move(unused), k - m);
    } else {
      while (extra.size() < k - m) {
        CardSet s(rng.sample(deck.cards(), a));
        if (used.insert(s).second) extra.push_back(std::move(s));
      }
    }
  }
  std::vector<CardSet> tail(hands.begin() + 1, hands.end());
  tail.insert(tail.end(), extra.begin(), extra.end());
  rng.shuffle(tail);

  Diffusion out;
  out.push_back(actual);
  for (const CardSet& h : tail) {
    std::vector<CardSet> deal(type.agents());
    deal[parts.small] = h;
    deal[parts.large] = deck - h;
    out.emplace_back(std::move(deal));
  }
  return out;
}

inline Diffusion two_agent_diffusion(const Deal& actual, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  return two_agent_diffusion(actual, k, rng);
}

// ---------------------------------------------------------------------------
// Fusion

/// A bijection between two diffusions of equal size: member i of the first
/// is paired with member image[i] of the second.
struct DiffusionSpread {
  std::vector<std::size_t> image;
};

inline bool is_bijection(const DiffusionSpread& f, std::size_t k) {
  if (f.image.size() != k) return false;
  std::vector<bool> hit(k, false);
  for (std::size_t j : f.image) {
    if (j >= k || hit[j]) return false;
    hit[j] = true;
  }
  return true;
}

/// Pairs gamma[gi] with delta[di] and the remaining members uniformly at
/// random.
inline DiffusionSpread random_diffusion_spread(std::size_t k, std::size_t gi, std::size_t di, Rng& rng) {
  if (gi >= k || di >= k) throw InvalidArgument("random_diffusion_spread: pinned index out of range");
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < k; ++j) {
    if (j != di) rest.push_back(j);
  }
  rng.shuffle(rest);
  DiffusionSpread f;
  std::size_t r = 0;
  for (std::size_t i = 0; i < k; ++i) f.image.push_back(i == gi ? di : rest[r++]);
  return f;
}

/// {G + f(G) : G in gamma}, in gamma's order.
inline Diffusion fuse(const Diffusion& gamma, const Diffusion& delta, const DiffusionSpread& f) {
  if (gamma.size() != delta.size()) throw InvalidArgument("fuse: diffusions differ in size");
  if (!is_bijection(f, gamma.size())) throw InvalidArgument("fuse: spread is not a bijection");
  if (gamma.empty()) return {};
  if (!gamma.front().deck().disjoint(delta.front().deck())) throw InvalidArgument("fuse: decks overlap");
  Diffusion out;
  out.reserve(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) out.push_back(combine(gamma[i], delta[f.image[i]]));
  return out;
}

}  // namespace sadi
