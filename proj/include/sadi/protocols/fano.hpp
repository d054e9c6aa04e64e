#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "sadi/combinat/fano.hpp"
#include "sadi/protocol.hpp"

namespace sadi {

namespace detail {

/// Holders of `type` with the given size, in cyclic order from `start`.
inline std::vector<Agent> holders_of_size(const DistributionType& type, std::size_t size, Agent start) {
  std::vector<Agent> out;
  for (std::size_t i = 0; i < type.agents(); ++i) {
    const Agent p = (start + i) % type.agents();
    if (type.size(p) == size) out.push_back(p);
  }
  return out;
}

inline bool is_plane_on(const std::vector<CardSet>& lines, const CardSet& deck) {
  if (!is_fano_plane(lines)) return false;
  CardSet points;
  for (const auto& l : lines) points = points | l;
  return points == deck;
}

}  // namespace detail

inline std::string fano331_violation(const DistributionType& type) {
  if (type.total() != 7 || type.holders().size() != 3) return "type is a permutation of (3,3,1)";
  if (detail::holders_of_size(type, 3, 0).size() != 2 || detail::holders_of_size(type, 1, 0).size() != 1) {
    return "type is a permutation of (3,3,1)";
  }
  return {};
}

inline std::string fano_line_violation(const DistributionType& type) {
  if (type.total() != 7 || type.holders().size() != 2) return "type is a permutation of (3,4,0)";
  if (detail::holders_of_size(type, 3, 0).size() != 1 || detail::holders_of_size(type, 4, 0).size() != 1) {
    return "type is a permutation of (3,4,0)";
  }
  return {};
}

/// The first three-card agent L arranges the deck as a Fano plane in which
/// her hand is a line and announces that her hand is one of its lines. The
/// other three-card agent B then picks a bijection l from points to lines
/// with x off l(x) and l(Cath's card) = L's hand, and announces the seven
/// deals "C holds x, L holds l(x), B the rest".
class Fano331Protocol final : public Protocol {
 public:
  explicit Fano331Protocol(DistributionType type, Agent first_mover = 0) : Protocol(std::move(type), first_mover) {
    if (const auto v = fano331_violation(this->type()); !v.empty()) throw PreconditionError("Fano331: " + v);
    const auto threes = detail::holders_of_size(this->type(), 3, this->first_mover());
    line_agent_ = threes[0];
    bob_ = threes[1];
    cath_ = detail::holders_of_size(this->type(), 1, 0)[0];
  }

  std::string name() const override { return "Fano331"; }
  Agent line_agent() const { return line_agent_; }
  Agent deal_agent() const { return bob_; }

  bool finished(const Run& rho) const override { return rho.size() > deal_step(); }

  std::optional<std::vector<Deal>> certified_diffusion(const Run& rho) const override {
    if (!finished(rho)) return std::nullopt;
    return rho[deal_step()].deals();
  }

 protected:
  bool permits_action(const Deal& deal, const Run& rho, const Announcement& a) const override {
    const std::size_t i = rho.size();
    if (i == line_step()) {
      return a.kind() == AnnouncementKind::kHandsIn && a.agent() == line_agent_ &&
             detail::is_plane_on(a.hands(), type().deck()) && extension_contains(a, deal);
    }
    if (i == deal_step()) {
      if (a.kind() != AnnouncementKind::kDealSet) return false;
      return valid_deal_set(deal, rho[line_step()].hands(), a.deals());
    }
    return a.is_pass();
  }

  Announcement choose_action(const Deal& deal, const Run& rho, Rng& rng) const override {
    const std::size_t i = rho.size();
    if (i == line_step()) {
      return Announcement::hands_in(line_agent_,
                                    random_fano_plane_through(type().deck(), deal.hand(line_agent_), rng));
    }
    if (i == deal_step()) {
      const auto& lines = rho[line_step()].hands();
      const auto all = all_fano_bijections(lines, deal.hand(cath_)[0], deal.hand(line_agent_));
      return Announcement::deal_set(deals_of(rng.pick(all)));
    }
    return Announcement::pass();
  }

  std::optional<std::vector<Announcement>> enumerate_actions(const Deal& deal, const Run& rho,
                                                             std::size_t limit) const override {
    const std::size_t i = rho.size();
    std::vector<Announcement> out;
    if (i == line_step()) {
      for (auto& plane : all_fano_planes(type().deck())) {
        if (std::find(plane.begin(), plane.end(), deal.hand(line_agent_)) != plane.end()) {
          out.push_back(Announcement::hands_in(line_agent_, std::move(plane)));
        }
      }
    } else if (i == deal_step()) {
      const auto& lines = rho[line_step()].hands();
      for (const auto& b : all_fano_bijections(lines, deal.hand(cath_)[0], deal.hand(line_agent_))) {
        out.push_back(Announcement::deal_set(deals_of(b)));
      }
    } else {
      out.push_back(Announcement::pass());
    }
    if (out.size() > limit) return std::nullopt;
    return out;
  }

 private:
  std::size_t line_step() const { return (line_agent_ + agents() - first_mover()) % agents(); }
  std::size_t deal_step() const { return line_step() + (bob_ + agents() - line_agent_) % agents(); }

  std::vector<Deal> deals_of(const FanoBijection& b) const {
    std::vector<Deal> deals;
    for (const auto& [x, line] : b) {
      std::vector<CardSet> hands(agents());
      hands[cath_] = CardSet{x};
      hands[line_agent_] = line;
      hands[bob_] = type().deck() - line - CardSet{x};
      deals.emplace_back(std::move(hands));
    }
    return deals;
  }

  bool valid_deal_set(const Deal& deal, const std::vector<CardSet>& lines, const std::vector<Deal>& deals) const {
    if (deals.size() != 7 || std::find(deals.begin(), deals.end(), deal) == deals.end()) return false;
    FanoBijection b;
    for (const Deal& g : deals) {
      if (!g.has_type(type())) return false;
      b[g.hand(cath_)[0]] = g.hand(line_agent_);
    }
    return is_fano_bijection(lines, b);
  }

  Agent line_agent_ = 0;
  Agent bob_ = 0;
  Agent cath_ = 0;
};

/// Two holders with three and four of seven cards: the three-card agent
/// announces that her hand is a line of a Fano plane through it. The seven
/// line/complement deals form a 7-diffusion.
class FanoLineProtocol final : public Protocol {
 public:
  explicit FanoLineProtocol(DistributionType type, Agent first_mover = 0) : Protocol(std::move(type), first_mover) {
    if (const auto v = fano_line_violation(this->type()); !v.empty()) throw PreconditionError("FanoLine2Agent: " + v);
    line_agent_ = detail::holders_of_size(this->type(), 3, 0)[0];
    other_ = detail::holders_of_size(this->type(), 4, 0)[0];
  }

  std::string name() const override { return "FanoLine2Agent"; }

  bool finished(const Run& rho) const override { return rho.size() > line_step(); }

  std::optional<std::vector<Deal>> certified_diffusion(const Run& rho) const override {
    if (!finished(rho)) return std::nullopt;
    std::vector<Deal> deals;
    for (const CardSet& line : rho[line_step()].hands()) {
      std::vector<CardSet> hands(agents());
      hands[line_agent_] = line;
      hands[other_] = type().deck() - line;
      deals.emplace_back(std::move(hands));
    }
    return deals;
  }

 protected:
  bool permits_action(const Deal& deal, const Run& rho, const Announcement& a) const override {
    if (rho.size() != line_step()) return a.is_pass();
    return a.kind() == AnnouncementKind::kHandsIn && a.agent() == line_agent_ &&
           detail::is_plane_on(a.hands(), type().deck()) && extension_contains(a, deal);
  }

  Announcement choose_action(const Deal& deal, const Run& rho, Rng& rng) const override {
    if (rho.size() != line_step()) return Announcement::pass();
    return Announcement::hands_in(line_agent_, random_fano_plane_through(type().deck(), deal.hand(line_agent_), rng));
  }

  std::optional<std::vector<Announcement>> enumerate_actions(const Deal& deal, const Run& rho,
                                                             std::size_t limit) const override {
    std::vector<Announcement> out;
    if (rho.size() != line_step()) {
      out.push_back(Announcement::pass());
    } else {
      for (auto& plane : all_fano_planes(type().deck())) {
        if (std::find(plane.begin(), plane.end(), deal.hand(line_agent_)) != plane.end()) {
          out.push_back(Announcement::hands_in(line_agent_, std::move(plane)));
        }
      }
    }
    if (out.size() > limit) return std::nullopt;
    return out;
  }

 private:
  std::size_t line_step() const { return (line_agent_ + agents() - first_mover()) % agents(); }

  Agent line_agent_ = 0;
  Agent other_ = 0;
};

}  // namespace sadi
