#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sadi/errors.hpp"

namespace sadi {

using Card = std::int32_t;
using Agent = std::size_t;

/// A sorted set of distinct cards.
class CardSet {
 public:
  using const_iterator = std::vector<Card>::const_iterator;

  CardSet() = default;
  CardSet(std::initializer_list<Card> cards) : cards_(cards) { normalize(); }
  explicit CardSet(std::vector<Card> cards) : cards_(std::move(cards)) { normalize(); }

  /// Cards lo, lo+1, ..., hi-1.
  static CardSet range(Card lo, Card hi) {
    CardSet s;
    for (Card c = lo; c < hi; ++c) s.cards_.push_back(c);
    return s;
  }

  std::size_t size() const { return cards_.size(); }
  bool empty() const { return cards_.empty(); }
  const_iterator begin() const { return cards_.begin(); }
  const_iterator end() const { return cards_.end(); }
  Card operator[](std::size_t i) const { return cards_[i]; }
  const std::vector<Card>& cards() const { return cards_; }

  bool contains(Card c) const { return std::binary_search(cards_.begin(), cards_.end(), c); }

  bool is_subset_of(const CardSet& other) const {
    return std::includes(other.cards_.begin(), other.cards_.end(), cards_.begin(), cards_.end());
  }

  std::size_t intersection_size(const CardSet& other) const {
    std::size_t n = 0;
    auto a = cards_.begin();
    auto b = other.cards_.begin();
    while (a != cards_.end() && b != other.cards_.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++n;
        ++a;
        ++b;
      }
    }
    return n;
  }

  bool disjoint(const CardSet& other) const { return intersection_size(other) == 0; }

  friend CardSet operator|(const CardSet& a, const CardSet& b) {
    CardSet r;
    r.cards_.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.cards_));
    return r;
  }
  friend CardSet operator&(const CardSet& a, const CardSet& b) {
    CardSet r;
    r.cards_.reserve(std::min(a.size(), b.size()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.cards_));
    return r;
  }
  friend CardSet operator-(const CardSet& a, const CardSet& b) {
    CardSet r;
    r.cards_.reserve(a.size());
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.cards_));
    return r;
  }

  CardSet with(Card c) const { return *this | CardSet{c}; }

  auto operator<=>(const CardSet&) const = default;
  bool operator==(const CardSet&) const = default;

 private:
  void normalize() {
    std::sort(cards_.begin(), cards_.end());
    cards_.erase(std::unique(cards_.begin(), cards_.end()), cards_.end());
  }

  std::vector<Card> cards_;
};

/// Per-agent hand sizes over an explicit deck. The deck defaults to
/// {0, ..., |s|-1}.
class DistributionType {
 public:
  DistributionType() = default;

  explicit DistributionType(std::vector<std::size_t> sizes)
      : sizes_(std::move(sizes)), deck_(CardSet::range(0, static_cast<Card>(total_of(sizes_)))) {}

  DistributionType(std::vector<std::size_t> sizes, CardSet deck)
      : sizes_(std::move(sizes)), deck_(std::move(deck)) {
    if (total_of(sizes_) != deck_.size()) {
      throw InvalidArgument("distribution type: hand sizes sum to " + std::to_string(total_of(sizes_)) +
                            " but the deck has " + std::to_string(deck_.size()) + " cards");
    }
  }

  const std::vector<std::size_t>& sizes() const { return sizes_; }
  std::size_t size(Agent p) const { return sizes_.at(p); }
  std::size_t agents() const { return sizes_.size(); }
  std::size_t total() const { return deck_.size(); }
  const CardSet& deck() const { return deck_; }

  /// Agents holding at least one card, in index order.
  std::vector<Agent> holders() const {
    std::vector<Agent> out;
    for (Agent p = 0; p < sizes_.size(); ++p) {
      if (sizes_[p] > 0) out.push_back(p);
    }
    return out;
  }

  bool operator==(const DistributionType&) const = default;
  auto operator<=>(const DistributionType&) const = default;

 private:
  static std::size_t total_of(const std::vector<std::size_t>& s) {
    return std::accumulate(s.begin(), s.end(), std::size_t{0});
  }

  std::vector<std::size_t> sizes_;
  CardSet deck_;
};

/// A partition of a deck into per-agent hands.
class Deal {
 public:
  Deal() = default;

  explicit Deal(std::vector<CardSet> hands) : hands_(std::move(hands)) {
    std::size_t n = 0;
    for (const auto& h : hands_) n += h.size();
    if (deck().size() != n) throw InvalidArgument("deal: hands are not pairwise disjoint");
  }

  std::size_t agents() const { return hands_.size(); }
  const CardSet& hand(Agent p) const { return hands_.at(p); }
  const std::vector<CardSet>& hands() const { return hands_; }

  CardSet deck() const {
    CardSet d;
    for (const auto& h : hands_) d = d | h;
    return d;
  }

  DistributionType type() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(hands_.size());
    for (const auto& h : hands_) sizes.push_back(h.size());
    return DistributionType(std::move(sizes), deck());
  }

  bool has_type(const DistributionType& t) const {
    if (t.agents() != hands_.size()) return false;
    std::size_t n = 0;
    for (Agent p = 0; p < hands_.size(); ++p) {
      if (hands_[p].size() != t.size(p) || !hands_[p].is_subset_of(t.deck())) return false;
      n += hands_[p].size();
    }
    return n == t.total();
  }

  std::optional<Agent> holder(Card c) const {
    for (Agent p = 0; p < hands_.size(); ++p) {
      if (hands_[p].contains(c)) return p;
    }
    return std::nullopt;
  }

  auto operator<=>(const Deal&) const = default;
  bool operator==(const Deal&) const = default;

 private:
  std::vector<CardSet> hands_;
};

/// H restricted to the cards in `subset`: hands H_P ∩ B over the deck B.
inline Deal restrict(const Deal& deal, const CardSet& subset) {
  if (!subset.is_subset_of(deal.deck())) {
    throw InvalidArgument("restrict: subset contains cards outside the deal's deck");
  }
  std::vector<CardSet> hands;
  hands.reserve(deal.agents());
  for (const auto& h : deal.hands()) hands.push_back(h & subset);
  return Deal(std::move(hands));
}

/// Hand-wise union of two deals over disjoint decks.
inline Deal combine(const Deal& a, const Deal& b) {
  if (a.agents() != b.agents()) throw InvalidArgument("combine: agent count mismatch");
  if (!a.deck().disjoint(b.deck())) throw InvalidArgument("combine: decks overlap");
  std::vector<CardSet> hands;
  hands.reserve(a.agents());
  for (Agent p = 0; p < a.agents(); ++p) hands.push_back(a.hand(p) | b.hand(p));
  return Deal(std::move(hands));
}

inline DistributionType restrict_type(const Deal& deal, const CardSet& subset) {
  return restrict(deal, subset).type();
}

// ---------------------------------------------------------------------------
// Counting

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  if (r > UINT64_MAX) throw OverflowError("count exceeds 64-bit range");
  return static_cast<std::uint64_t>(r);
}

}  // namespace detail

/// C(n, k), throwing OverflowError when it does not fit in 64 bits.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > UINT64_MAX) throw OverflowError("binomial coefficient exceeds 64-bit range");
  }
  return static_cast<std::uint64_t>(r);
}

/// |Deal(s)| = |s|! / prod s_P!
inline std::uint64_t deal_count(const DistributionType& type) {
  std::uint64_t remaining = type.total();
  std::uint64_t count = 1;
  for (std::size_t s : type.sizes()) {
    count = detail::checked_mul(count, binomial(remaining, s));
    remaining -= s;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Enumeration

/// Calls fn on every r-subset of pool in lexicographic order. Stops early when
/// fn returns false. Returns false iff stopped early.
template <typename Fn>
bool for_each_combination(const std::vector<Card>& pool, std::size_t r, Fn&& fn) {
  if (r > pool.size()) return true;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Card> current(r);
  while (true) {
    for (std::size_t i = 0; i < r; ++i) current[i] = pool[idx[i]];
    if (!fn(static_cast<const std::vector<Card>&>(current))) return false;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == pool.size() - r + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

namespace detail {

template <typename Fn>
bool enumerate_from(const DistributionType& type, Agent p, const std::vector<Card>& remaining,
                    std::vector<CardSet>& hands, Fn& fn) {
  if (p + 1 == type.agents()) {
    hands[p] = CardSet(remaining);
    return fn(Deal(hands));
  }
  return for_each_combination(remaining, type.size(p), [&](const std::vector<Card>& chosen) {
    std::vector<Card> rest;
    rest.reserve(remaining.size() - chosen.size());
    std::set_difference(remaining.begin(), remaining.end(), chosen.begin(), chosen.end(),
                        std::back_inserter(rest));
    hands[p] = CardSet(chosen);
    return enumerate_from(type, p + 1, rest, hands, fn);
  });
}

}  // namespace detail

/// Visits every deal of `type` exactly once in canonical order: agent 0's
/// hand varies slowest, each hand in lexicographic order. Stops when fn
/// returns false.
template <typename Fn>
void for_each_deal(const DistributionType& type, Fn&& fn) {
  if (type.agents() == 0) return;
  std::vector<CardSet> hands(type.agents());
  detail::enumerate_from(type, 0, type.deck().cards(), hands, fn);
}

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// All deals of `type`, refusing when there are more than `budget`.
inline std::vector<Deal> enumerate_deals(const DistributionType& type,
                                         std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::uint64_t n = deal_count(type);
  if (n > budget) {
    throw BudgetExceeded("deal space has " + std::to_string(n) + " deals, budget is " + std::to_string(budget));
  }
  std::vector<Deal> out;
  out.reserve(n);
  for_each_deal(type, [&](Deal d) {
    out.push_back(std::move(d));
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Text notation: "1,2|3,4,5|6,7,8,9"; an empty hand is written "" or "·".

namespace detail {

inline void append_cards(std::string& out, const CardSet& s) {
  char buf[16];
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    const auto r = std::to_chars(buf, buf + sizeof buf, s[i]);
    out.append(buf, r.ptr);
  }
}

}  // namespace detail

inline std::string format_cards(const CardSet& s) {
  std::string out;
  detail::append_cards(out, s);
  return out;
}

inline std::string format_deal(const Deal& d) {
  std::string out;
  for (Agent p = 0; p < d.agents(); ++p) {
    if (p) out += '|';
    if (d.hand(p).empty()) out += "·";
    else detail::append_cards(out, d.hand(p));
  }
  return out;
}

inline CardSet parse_cards(std::string_view text) {
  std::vector<Card> cards;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(token, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("bad card '" + token + "'");
    }
    if (used != token.size() || v < 0) throw InvalidArgument("bad card '" + token + "'");
    cards.push_back(static_cast<Card>(v));
    token.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == ',' || ch == ' ') {
      flush();
    } else if (static_cast<unsigned char>(ch) >= 0x80) {
      // part of the "·" placeholder
    } else {
      token += ch;
    }
  }
  flush();
  const std::size_t n = cards.size();
  CardSet s(std::move(cards));
  if (s.size() != n) throw InvalidArgument("duplicate card in '" + std::string(text) + "'");
  return s;
}

inline Deal parse_deal(std::string_view text) {
  std::vector<CardSet> hands;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = text.find('|', start);
    hands.push_back(parse_cards(text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return Deal(std::move(hands));
}

}  // namespace sadi
