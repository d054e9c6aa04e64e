#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sadi/combinat/cover.hpp"
#include "sadi/protocol.hpp"

namespace sadi {

namespace detail {

inline std::size_t max_pairwise_overlap(const std::vector<CardSet>& sets) {
  std::size_t most = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) most = std::max(most, sets[i].intersection_size(sets[j]));
  }
  return most;
}

inline std::size_t min_other_hand(const DistributionType& type, Agent alice) {
  std::size_t least = type.total() + 1;
  for (Agent p : type.holders()) {
    if (p != alice) least = std::min(least, type.size(p));
  }
  return least;
}

}  // namespace detail

/// Alice arranges the deck so that the complement of her hand is one of the
/// sets Y_1..Y_k of a cover family and announces that her hand is one of the
/// Deck - Y_i. Any two Y_i share fewer cards than any other player holds, so
/// each other player learns i. Every other player then announces, in turn,
/// that her hand is one of A_1..A_k with A_i inside what is left of Y_i and
/// A_i her true hand for Alice's true i; read together with Alice's
/// announcement this is "if Alice holds Deck - Y_i then my hand is A_i".
class CoverHandsProtocol final : public Protocol {
 public:
  CoverHandsProtocol(DistributionType type, Agent alice, CoverFamily family, std::string name, Agent first_mover = 0)
      : Protocol(std::move(type), first_mover), alice_(alice), family_(std::move(family)), name_(std::move(name)) {
    if (family_.n != this->type().total()) throw InvalidArgument(name_ + ": cover family has the wrong ground set");
    overlap_bound_ = detail::max_pairwise_overlap(family_.sets);
    if (overlap_bound_ >= detail::min_other_hand(this->type(), alice_)) {
      throw PreconditionError(name_ + ": overlap of the Y_i is not below every other hand size");
    }
    for (std::size_t j = 1; j < agents(); ++j) {
      const Agent p = (alice_ + j) % agents();
      if (!passive(p)) last_step_ = alice_step() + j;
    }
  }

  std::string name() const override { return name_; }
  Agent alice() const { return alice_; }
  std::size_t k() const { return family_.sets.size(); }
  const CoverFamily& family() const { return family_; }

  bool finished(const Run& rho) const override { return rho.size() > last_step_; }

  std::optional<std::vector<Deal>> certified_diffusion(const Run& rho) const override {
    if (!finished(rho)) return std::nullopt;
    const auto ys = complements(rho[alice_step()]);
    std::vector<std::vector<CardSet>> hands(k(), std::vector<CardSet>(agents()));
    for (std::size_t i = 0; i < k(); ++i) hands[i][alice_] = rho[alice_step()].hands()[i];
    for (std::size_t s = alice_step() + 1; s <= last_step_; ++s) {
      const Announcement& a = rho[s];
      if (a.is_pass()) continue;
      for (const CardSet& h : a.hands()) hands[*index_of(ys, h)][a.agent()] = h;
    }
    std::vector<Deal> out;
    for (auto& h : hands) out.emplace_back(std::move(h));
    return out;
  }

 protected:
  bool permits_action(const Deal& deal, const Run& rho, const Announcement& a) const override {
    const std::size_t i = rho.size();
    if (i < alice_step()) return a.is_pass();
    if (i == alice_step()) return valid_alice(deal, a);
    const Agent p = mover(i);
    if (passive(p)) return a.is_pass();
    if (a.kind() != AnnouncementKind::kHandsIn || a.agent() != p || a.hands().size() != k()) return false;
    if (std::find(a.hands().begin(), a.hands().end(), deal.hand(p)) == a.hands().end()) return false;
    const auto z = remainders(rho);
    std::vector<bool> hit(k(), false);
    for (const CardSet& h : a.hands()) {
      if (h.size() != type().size(p)) return false;
      const auto j = index_of(z, h);
      if (!j || hit[*j]) return false;
      hit[*j] = true;
    }
    return true;
  }

  Announcement choose_action(const Deal& deal, const Run& rho, Rng& rng) const override {
    const std::size_t i = rho.size();
    if (i < alice_step()) return Announcement::pass();
    if (i == alice_step()) return alice_announcement(deal.hand(alice_), rng);
    const Agent p = mover(i);
    if (passive(p)) return Announcement::pass();
    const auto z = remainders(rho);
    const std::size_t star = alice_index(rho, deal);
    std::vector<CardSet> hands;
    for (std::size_t j = 0; j < k(); ++j) {
      hands.push_back(j == star ? deal.hand(p) : CardSet(rng.sample(z[j].cards(), type().size(p))));
    }
    return Announcement::hands_in(p, std::move(hands));
  }

  std::optional<std::vector<Announcement>> enumerate_actions(const Deal& deal, const Run& rho,
                                                             std::size_t limit) const override {
    const std::size_t i = rho.size();
    if (i < alice_step()) return std::vector<Announcement>{Announcement::pass()};
    if (i == alice_step()) return std::nullopt;
    const Agent p = mover(i);
    if (passive(p)) return std::vector<Announcement>{Announcement::pass()};
    const auto z = remainders(rho);
    const std::size_t star = alice_index(rho, deal);
    std::vector<std::vector<CardSet>> options(k());
    for (std::size_t j = 0; j < k(); ++j) {
      if (j == star) {
        options[j].push_back(deal.hand(p));
        continue;
      }
      bool overflow = false;
      for_each_combination(z[j].cards(), type().size(p), [&](const std::vector<Card>& c) {
        if (options[j].size() >= limit) {
          overflow = true;
          return false;
        }
        options[j].emplace_back(c);
        return true;
      });
      if (overflow) return std::nullopt;
    }
    std::vector<Announcement> out;
    std::vector<CardSet> pick(k());
    bool overflow = false;
    auto rec = [&](auto&& self, std::size_t j) -> void {
      if (overflow) return;
      if (j == k()) {
        if (out.size() >= limit) {
          overflow = true;
          return;
        }
        out.push_back(Announcement::hands_in(p, pick));
        return;
      }
      for (const CardSet& h : options[j]) {
        pick[j] = h;
        self(self, j + 1);
      }
    };
    rec(rec, 0);
    if (overflow) return std::nullopt;
    return out;
  }

 private:
  std::size_t alice_step() const { return (alice_ + agents() - first_mover()) % agents(); }

  std::vector<CardSet> complements(const Announcement& a) const {
    std::vector<CardSet> out;
    for (const CardSet& h : a.hands()) out.push_back(type().deck() - h);
    return out;
  }

  /// The unique index j with h inside sets[j].
  static std::optional<std::size_t> index_of(const std::vector<CardSet>& sets, const CardSet& h) {
    std::optional<std::size_t> found;
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (h.is_subset_of(sets[j])) {
        if (found) return std::nullopt;
        found = j;
      }
    }
    return found;
  }

  /// Z_1..Z_k after the announcements in rho.
  std::vector<CardSet> remainders(const Run& rho) const {
    auto z = complements(rho[alice_step()]);
    const auto ys = z;
    for (std::size_t s = alice_step() + 1; s < rho.size(); ++s) {
      if (rho[s].kind() != AnnouncementKind::kHandsIn) continue;
      for (const CardSet& h : rho[s].hands()) {
        if (const auto j = index_of(ys, h)) z[*j] = z[*j] - h;
      }
    }
    return z;
  }

  std::size_t alice_index(const Run& rho, const Deal& deal) const {
    const auto& hands = rho[alice_step()].hands();
    return static_cast<std::size_t>(std::find(hands.begin(), hands.end(), deal.hand(alice_)) - hands.begin());
  }

  bool valid_alice(const Deal& deal, const Announcement& a) const {
    if (a.kind() != AnnouncementKind::kHandsIn || a.agent() != alice_ || a.hands().size() != k()) return false;
    if (std::find(a.hands().begin(), a.hands().end(), deal.hand(alice_)) == a.hands().end()) return false;
    const auto ys = complements(a);
    CardSet all;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      if (!a.hands()[i].is_subset_of(type().deck()) || a.hands()[i].size() != type().size(alice_)) return false;
      all = all | ys[i];
      for (std::size_t j = 0; j < i; ++j) {
        const CardSet both = ys[i] & ys[j];
        if (both.size() > overlap_bound_) return false;
        if (family_.variant == CoverVariant::kPart1) {
          for (std::size_t l = 0; l < j; ++l) {
            if (!both.disjoint(ys[l])) return false;
          }
        }
      }
    }
    return all == type().deck();
  }

  Announcement alice_announcement(const CardSet& hand, Rng& rng) const {
    const std::size_t star = rng.index(k());
    const CardSet& ystar = family_.sets[star];
    std::vector<Card> outside = (type().deck() - hand).cards();
    std::vector<Card> inside = hand.cards();
    rng.shuffle(outside);
    rng.shuffle(inside);
    std::map<Card, Card> sigma;
    std::size_t o = 0;
    std::size_t n = 0;
    for (Card x = 0; x < static_cast<Card>(family_.n); ++x) sigma[x] = ystar.contains(x) ? outside[o++] : inside[n++];
    std::vector<CardSet> hands;
    for (const CardSet& y : family_.sets) {
      std::vector<Card> mapped;
      for (Card x : y) mapped.push_back(sigma.at(x));
      hands.push_back(type().deck() - CardSet(std::move(mapped)));
    }
    return Announcement::hands_in(alice_, std::move(hands));
  }

  Agent alice_;
  CoverFamily family_;
  std::string name_;
  std::size_t overlap_bound_ = 0;
  std::size_t last_step_ = 0;
};

/// The agent playing Alice in the lopsided protocol: the first agent whose
/// hand satisfies (k-1)(n-k) <= k s_P <= (k-1) n.
inline std::optional<Agent> lopsided_agent(const DistributionType& type, std::size_t k) {
  for (Agent p : type.holders()) {
    if (cover_part1_violation(type.total(), type.size(p), k).empty()) return p;
  }
  return std::nullopt;
}

inline std::string lopsided_violation(const DistributionType& type, std::size_t k) {
  const std::size_t n = type.total();
  if (k <= 2) return "k > 2";
  if (type.holders().size() < 2) return "at least two agents hold cards";
  if (n < k * k) return "|s| >= k^2";
  for (Agent p : type.holders()) {
    if (type.size(p) < 3) return "every player holds at least three cards";
  }
  if (!lopsided_agent(type, k)) return "(k-1)(|s|-k) <= k s_A <= (k-1)|s| for some agent A";
  return {};
}

inline ProtocolPtr solve_lopsided(const DistributionType& type, std::size_t k, Agent first_mover = 0) {
  if (const auto v = lopsided_violation(type, k); !v.empty()) throw PreconditionError("lopsided: " + v + " fails");
  const Agent alice = *lopsided_agent(type, k);
  return std::make_shared<const CoverHandsProtocol>(type, alice, cover_part1(type.total(), type.size(alice), k),
                                                    "Lopsided", first_mover);
}

/// Parameters of the big-hand protocol: Alice is the largest holder,
/// b = |s| - s_A and c = 8m^2 with m the number of holders.
struct BigHandParameters {
  Agent alice = 0;
  std::size_t m = 0;
  std::size_t b = 0;
  std::size_t c = 0;
};

inline BigHandParameters big_hand_parameters(const DistributionType& type) {
  BigHandParameters bp;
  for (Agent p : type.holders()) {
    if (type.size(p) > type.size(bp.alice)) bp.alice = p;
  }
  bp.m = type.holders().size();
  bp.b = type.total() - type.size(bp.alice);
  bp.c = 8 * bp.m * bp.m;
  return bp;
}

inline std::string big_hand_violation(const DistributionType& type) {
  if (type.holders().size() < 2) return "at least two agents hold cards";
  const auto bp = big_hand_parameters(type);
  const std::size_t n = type.total();
  for (Agent p : type.holders()) {
    if (type.size(p) <= bp.c) return "every player holds more than 8m^2 cards";
  }
  if (bp.b * bp.b > 4 * bp.m * bp.m * n) return "s_A >= |s| - 2m sqrt(|s|)";
  if (const auto v = cover_part2_violation(n, bp.b, bp.c); !v.empty()) return v;
  const auto family = cover_part2(n, bp.b, bp.c);
  if (family.sets.size() < 3) return "the cover has at least three sets";
  if (detail::max_pairwise_overlap(family.sets) >= detail::min_other_hand(type, bp.alice)) {
    return "Y_i overlaps below every other hand size";
  }
  return {};
}

inline ProtocolPtr solve_big_hand(const DistributionType& type, Agent first_mover = 0) {
  if (const auto v = big_hand_violation(type); !v.empty()) throw PreconditionError("big hand: " + v + " fails");
  const auto bp = big_hand_parameters(type);
  return std::make_shared<const CoverHandsProtocol>(type, bp.alice, cover_part2(type.total(), bp.b, bp.c), "BigHand",
                                                    first_mover);
}

}  // namespace sadi
