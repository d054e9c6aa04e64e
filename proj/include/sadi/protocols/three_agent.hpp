#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sadi/combinat/spread.hpp"
#include "sadi/protocol.hpp"

namespace sadi {

/// Empty when the spread protocol applies to `type` with `announcer` moving
/// first; otherwise the failed inequality and the value of d.
inline std::string three_agent_violation(const DistributionType& type, Agent announcer) {
  const auto holders = type.holders();
  if (holders.size() != 3) return "exactly three agents hold cards";
  if (announcer >= type.agents() || type.size(announcer) == 0) return "the announcer holds cards";
  const std::size_t a = type.size(announcer);
  std::size_t others = 0;
  std::vector<std::size_t> ds;
  for (Agent p : holders) {
    if (p == announcer) continue;
    others += type.size(p);
    ds.push_back(type.size(p));
  }
  for (std::size_t d : ds) {
    const auto c = spread_conditions(a + 1, others - 1, d);
    const std::string tag = " with d=" + std::to_string(d);
    if (!c.injection) return "C(b+c-1, d) >= a+1" + tag;
    if (!c.coverage) return "d(a+1) >= b+c-1" + tag;
    if (!c.avoidance) return "a(b+c-1) >= d(a+1)" + tag;
  }
  return {};
}

/// The short three-agent protocol. The announcer adds a random card x to her
/// hand A and announces that all her cards are in A' = A + {x}. Holders of
/// no card of A' pass; the holder Q of x announces the deals built from a
/// random spread f from A' into hands of the remaining agent D with
/// f(x) = H_D: for each z in A' the announcer holds A' - {z}, D holds f(z)
/// and Q the rest. The next agent ends the run.
class ThreeAgentSpreadProtocol final : public Protocol {
 public:
  ThreeAgentSpreadProtocol(DistributionType type, Agent announcer, Agent first_mover = 0)
      : Protocol(std::move(type), first_mover), announcer_(announcer) {
    if (const auto v = three_agent_violation(this->type(), announcer_); !v.empty()) {
      throw PreconditionError("three-agent spread protocol: " + v + " fails");
    }
    const auto holders = this->type().holders();
    for (Agent p : holders) {
      if (p != announcer_) others_.push_back(p);
    }
  }

  std::string name() const override { return "ThreeAgentSpread"; }
  Agent announcer() const { return announcer_; }
  std::size_t k() const { return type().size(announcer_) + 1; }

  bool finished(const Run& rho) const override { return deal_set_index(rho).has_value(); }

  std::optional<std::vector<Deal>> certified_diffusion(const Run& rho) const override {
    const auto i = deal_set_index(rho);
    if (!i) return std::nullopt;
    return rho[*i].deals();
  }

  /// A' as announced, when the announcement has been made.
  std::optional<CardSet> extended_hand(const Run& rho) const {
    const std::size_t i = announce_step();
    if (rho.size() <= i) return std::nullopt;
    return extended_hand(rho[i]);
  }

  std::optional<CardSet> extended_hand(const Announcement& a) const {
    if (a.kind() != AnnouncementKind::kCountsIn || a.agent() != announcer_) return std::nullopt;
    const std::size_t s = type().size(announcer_);
    if (a.count() == s && a.cards().size() == s + 1) return a.cards();
    const CardSet rest = type().deck() - a.cards();
    if (a.count() == 0 && rest.size() == s + 1) return rest;
    return std::nullopt;
  }

 protected:
  bool permits_action(const Deal& deal, const Run& rho, const Announcement& a) const override {
    const std::size_t i = rho.size();
    if (i < announce_step()) return a.is_pass();
    if (i == announce_step()) {
      const auto ext = extended_hand(a);
      return ext && deal.hand(announcer_).is_subset_of(*ext);
    }
    const auto ext = extended_hand(rho);
    if (!ext) return false;
    const Agent p = mover(i);
    if (!holds_extra(deal, p, *ext)) return a.is_pass();
    if (a.kind() != AnnouncementKind::kDealSet) return false;
    return valid_deal_set(deal, p, *ext, a.deals());
  }

  Announcement choose_action(const Deal& deal, const Run& rho, Rng& rng) const override {
    const std::size_t i = rho.size();
    if (i < announce_step()) return Announcement::pass();
    if (i == announce_step()) {
      const CardSet hand = deal.hand(announcer_);
      const Card x = rng.pick((type().deck() - hand).cards());
      return Announcement::counts_in(type(), announcer_, hand.with(x), hand.size());
    }
    const CardSet ext = *extended_hand(rho);
    const Agent p = mover(i);
    if (!holds_extra(deal, p, ext)) return Announcement::pass();
    const Agent d = other(p);
    const Card x = (deal.hand(p) & ext)[0];
    const BasicSpread f = pinned_spread(ext, x, type().deck() - ext, deal.hand(d), rng);
    return Announcement::deal_set(deals_of(f, p, d, ext));
  }

  std::optional<std::vector<Announcement>> enumerate_actions(const Deal& deal, const Run& rho,
                                                             std::size_t limit) const override {
    const std::size_t i = rho.size();
    if (i < announce_step()) return std::vector<Announcement>{Announcement::pass()};
    std::vector<Announcement> out;
    if (i == announce_step()) {
      const CardSet hand = deal.hand(announcer_);
      for (Card x : type().deck() - hand) out.push_back(Announcement::counts_in(type(), announcer_, hand.with(x), hand.size()));
      if (out.size() > limit) return std::nullopt;
      return out;
    }
    const CardSet ext = *extended_hand(rho);
    const Agent p = mover(i);
    if (!holds_extra(deal, p, ext)) return std::vector<Announcement>{Announcement::pass()};
    const Agent d = other(p);
    const Card x = (deal.hand(p) & ext)[0];
    bool overflow = false;
    for_each_pinned_spread(ext, x, type().deck() - ext, deal.hand(d), [&](const BasicSpread& f) {
      if (out.size() >= limit) {
        overflow = true;
        return false;
      }
      out.push_back(Announcement::deal_set(deals_of(f, p, d, ext)));
      return true;
    });
    if (overflow) return std::nullopt;
    return out;
  }

 private:
  std::size_t announce_step() const { return (announcer_ + agents() - first_mover()) % agents(); }

  std::optional<std::size_t> deal_set_index(const Run& rho) const {
    for (std::size_t i = announce_step() + 1; i < rho.size(); ++i) {
      if (rho[i].kind() == AnnouncementKind::kDealSet) return i;
    }
    return std::nullopt;
  }

  bool holds_extra(const Deal& deal, Agent p, const CardSet& ext) const {
    return p != announcer_ && !passive(p) && deal.hand(p).intersection_size(ext) == 1;
  }

  Agent other(Agent p) const { return others_[0] == p ? others_[1] : others_[0]; }

  std::vector<Deal> deals_of(const BasicSpread& f, Agent q, Agent d, const CardSet& ext) const {
    const CardSet rest = type().deck() - ext;
    std::vector<Deal> deals;
    for (std::size_t j = 0; j < f.domain.size(); ++j) {
      std::vector<CardSet> hands(agents());
      hands[announcer_] = ext - CardSet{f.domain[j]};
      hands[d] = f.image[j];
      hands[q] = (rest - f.image[j]).with(f.domain[j]);
      deals.emplace_back(std::move(hands));
    }
    return deals;
  }

  bool valid_deal_set(const Deal& deal, Agent q, const CardSet& ext, const std::vector<Deal>& deals) const {
    if (deals.size() != ext.size()) return false;
    if (std::find(deals.begin(), deals.end(), deal) == deals.end()) return false;
    const Agent d = other(q);
    const CardSet rest = type().deck() - ext;
    BasicSpread f;
    f.codomain = rest;
    f.n = type().size(d);
    for (const Deal& g : deals) {
      if (!g.has_type(type())) return false;
      const CardSet held = g.hand(announcer_);
      if (!held.is_subset_of(ext)) return false;
      const CardSet z = ext - held;
      if (z.size() != 1 || !g.hand(q).contains(z[0])) return false;
      if (!g.hand(d).is_subset_of(rest)) return false;
      f.domain.push_back(z[0]);
      f.image.push_back(g.hand(d));
    }
    return verify_spread(f);
  }

  Agent announcer_;
  std::vector<Agent> others_;
};

}  // namespace sadi
