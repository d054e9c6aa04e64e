#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "sadi/cards.hpp"
#include "sadi/errors.hpp"

namespace sadi {

enum class AnnouncementKind {
  kPass,        ///< vacuous announcement, extends to every deal
  kEnd,         ///< terminates the run
  kCountsIn,    ///< "I hold n cards in S"
  kHandsIn,     ///< "my hand is one of these"
  kDealSet,     ///< "the deal is one of these"
  kRestricted,  ///< an announcement about the deal restricted to a sub-deck
};

inline const char* kind_name(AnnouncementKind k) {
  switch (k) {
    case AnnouncementKind::kPass: return "pass";
    case AnnouncementKind::kEnd: return "end";
    case AnnouncementKind::kCountsIn: return "counts_in";
    case AnnouncementKind::kHandsIn: return "hands_in";
    case AnnouncementKind::kDealSet: return "deal_set";
    case AnnouncementKind::kRestricted: return "restricted";
  }
  return "?";
}

/// A public action. Every kind except End denotes a set of deals (its
/// extension); membership is decided lazily by extension_contains.
///
/// HandsIn and DealSet keep the order they were built in (traces print it)
/// but compare as sets.
class Announcement {
 public:
  static Announcement pass() { return Announcement(AnnouncementKind::kPass); }
  static Announcement end() { return Announcement(AnnouncementKind::kEnd); }

  /// "Agent p holds n cards in S", canonicalized: of (S, n) and
  /// (Deck \ S, s_p - n) keep the pair whose set is lexicographically
  /// smaller. Both pairs denote the same deal set.
  static Announcement counts_in(const DistributionType& type, Agent p, const CardSet& subset, std::size_t n) {
    if (p >= type.agents()) throw InvalidArgument("counts_in: agent out of range");
    if (!subset.is_subset_of(type.deck())) throw InvalidArgument("counts_in: set not inside the deck");
    Announcement a(AnnouncementKind::kCountsIn);
    a.agent_ = p;
    CardSet complement = type.deck() - subset;
    if (subset <= complement || n > type.size(p)) {
      a.cards_ = subset;
      a.count_ = n;
    } else {
      a.cards_ = std::move(complement);
      a.count_ = type.size(p) - n;
    }
    return a;
  }

  /// A count announcement whose (S, n) pair is already canonical, as read
  /// back from a trace.
  static Announcement counts_in_canonical(Agent p, CardSet subset, std::size_t n) {
    Announcement a(AnnouncementKind::kCountsIn);
    a.agent_ = p;
    a.cards_ = std::move(subset);
    a.count_ = n;
    return a;
  }

  static Announcement hands_in(Agent p, std::vector<CardSet> hands) {
    Announcement a(AnnouncementKind::kHandsIn);
    a.agent_ = p;
    a.hands_ = std::move(hands);
    return a;
  }

  static Announcement deal_set(std::vector<Deal> deals) {
    Announcement a(AnnouncementKind::kDealSet);
    a.deals_ = std::move(deals);
    return a;
  }

  /// {H : H restricted to `subset` lies in the extension of `inner`}.
  static Announcement restricted(CardSet subset, Announcement inner) {
    if (inner.is_end()) throw InvalidArgument("restricted: End has no extension");
    if (inner.is_pass()) return pass();
    Announcement a(AnnouncementKind::kRestricted);
    a.cards_ = std::move(subset);
    a.inner_ = std::make_shared<const Announcement>(std::move(inner));
    return a;
  }

  AnnouncementKind kind() const { return kind_; }
  bool is_pass() const { return kind_ == AnnouncementKind::kPass; }
  bool is_end() const { return kind_ == AnnouncementKind::kEnd; }

  Agent agent() const { return agent_; }
  /// S for CountsIn; the sub-deck for Restricted.
  const CardSet& cards() const { return cards_; }
  std::size_t count() const { return count_; }
  const std::vector<CardSet>& hands() const { return hands_; }
  const std::vector<Deal>& deals() const { return deals_; }
  const Announcement& inner() const { return *inner_; }

  /// Identity string; equal for announcements that compare equal.
  std::string key() const {
    std::string k = kind_name(kind_);
    switch (kind_) {
      case AnnouncementKind::kPass:
      case AnnouncementKind::kEnd:
        break;
      case AnnouncementKind::kCountsIn:
        k += ":" + std::to_string(agent_) + ":" + format_cards(cards_) + ":" + std::to_string(count_);
        break;
      case AnnouncementKind::kHandsIn: {
        k += ":" + std::to_string(agent_);
        auto sorted = hands_;
        std::sort(sorted.begin(), sorted.end());
        for (const auto& h : sorted) k += ":" + format_cards(h);
        break;
      }
      case AnnouncementKind::kDealSet: {
        auto sorted = deals_;
        std::sort(sorted.begin(), sorted.end());
        for (const auto& d : sorted) {
          k += ';';
          k += format_deal(d);
        }
        break;
      }
      case AnnouncementKind::kRestricted:
        k += "[" + format_cards(cards_) + "]{" + inner_->key() + "}";
        break;
    }
    return k;
  }

  friend bool operator==(const Announcement& a, const Announcement& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case AnnouncementKind::kPass:
      case AnnouncementKind::kEnd:
        return true;
      case AnnouncementKind::kCountsIn:
        return a.agent_ == b.agent_ && a.count_ == b.count_ && a.cards_ == b.cards_;
      case AnnouncementKind::kHandsIn:
        return a.agent_ == b.agent_ && same_elements(a.hands_, b.hands_);
      case AnnouncementKind::kDealSet:
        return same_elements(a.deals_, b.deals_);
      case AnnouncementKind::kRestricted:
        return a.cards_ == b.cards_ && *a.inner_ == *b.inner_;
    }
    return false;
  }

 private:
  explicit Announcement(AnnouncementKind k) : kind_(k) {}

  template <typename T>
  static bool same_elements(std::vector<T> a, std::vector<T> b) {
    if (a.size() != b.size()) return false;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

  AnnouncementKind kind_ = AnnouncementKind::kPass;
  Agent agent_ = 0;
  CardSet cards_;
  std::size_t count_ = 0;
  std::vector<CardSet> hands_;
  std::vector<Deal> deals_;
  std::shared_ptr<const Announcement> inner_;
};

/// True iff `deal` lies in the deal set the announcement denotes.
inline bool extension_contains(const Announcement& a, const Deal& deal) {
  switch (a.kind()) {
    case AnnouncementKind::kPass:
      return true;
    case AnnouncementKind::kEnd:
      throw InvalidArgument("extension_contains: End denotes no deal set");
    case AnnouncementKind::kCountsIn:
      if (a.agent() >= deal.agents()) throw InvalidArgument("extension_contains: agent out of range");
      return deal.hand(a.agent()).intersection_size(a.cards()) == a.count();
    case AnnouncementKind::kHandsIn: {
      if (a.agent() >= deal.agents()) throw InvalidArgument("extension_contains: agent out of range");
      const auto& h = deal.hand(a.agent());
      return std::find(a.hands().begin(), a.hands().end(), h) != a.hands().end();
    }
    case AnnouncementKind::kDealSet:
      if (!a.deals().empty() && a.deals().front().agents() != deal.agents()) {
        throw InvalidArgument("extension_contains: deal set over a different agent count");
      }
      return std::find(a.deals().begin(), a.deals().end(), deal) != a.deals().end();
    case AnnouncementKind::kRestricted:
      return extension_contains(a.inner(), restrict(deal, a.cards()));
  }
  return false;
}

namespace detail {

enum class CountExtent { kEmpty, kAll, kProper };

inline CountExtent count_extent(const DistributionType& type, const Announcement& a) {
  const std::size_t s = type.size(a.agent());
  const std::size_t inside = a.cards().size();
  const std::size_t outside = type.total() - inside;
  const std::size_t lo = s > outside ? s - outside : 0;
  const std::size_t hi = std::min(s, inside);
  if (a.count() < lo || a.count() > hi) return CountExtent::kEmpty;
  if (lo == hi) return CountExtent::kAll;
  return CountExtent::kProper;
}

}  // namespace detail

/// Extensional equality of two count announcements of the same agent.
/// Announcements true of no deal, or of every deal, are equal among
/// themselves; otherwise equality is decided through the canonical form.
inline bool announcements_equal(const DistributionType& type, const Announcement& a, const Announcement& b) {
  if (a.kind() != AnnouncementKind::kCountsIn || b.kind() != AnnouncementKind::kCountsIn) {
    throw InvalidArgument("announcements_equal: both announcements must be count announcements");
  }
  if (a.agent() != b.agent()) throw InvalidArgument("announcements_equal: announcements by different agents");
  const auto ea = detail::count_extent(type, a);
  const auto eb = detail::count_extent(type, b);
  if (ea != detail::CountExtent::kProper || eb != detail::CountExtent::kProper) return ea == eb;
  return Announcement::counts_in(type, a.agent(), a.cards(), a.count()) ==
         Announcement::counts_in(type, b.agent(), b.cards(), b.count());
}

/// Explicit extension over every deal of `type` (small decks only).
inline std::vector<Deal> expand_extension(const Announcement& a, const DistributionType& type) {
  std::vector<Deal> out;
  for_each_deal(type, [&](Deal d) {
    if (extension_contains(a, d)) out.push_back(std::move(d));
    return true;
  });
  return out;
}

}  // namespace sadi
