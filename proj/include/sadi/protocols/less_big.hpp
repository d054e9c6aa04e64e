#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sadi/protocols/bounds.hpp"
#include "sadi/protocols/cover_hands.hpp"
#include "sadi/protocols/reduction.hpp"
#include "sadi/protocols/two_agent.hpp"

namespace sadi {

/// The largest holder, first in agent order on ties.
inline Agent largest_holder(const DistributionType& type) {
  Agent best = type.holders().front();
  for (Agent p : type.holders()) {
    if (type.size(p) > type.size(best)) best = p;
  }
  return best;
}

/// The agent who splits in the less-big recursion: the holder of exactly
/// k-1 cards if there is one, else the first agent other than Alice holding
/// at least 2k-1 cards.
inline std::optional<Agent> less_big_splitter(const DistributionType& type, std::size_t k, Agent alice) {
  for (Agent p : type.holders()) {
    if (type.size(p) == k - 1) return p;
  }
  for (Agent p : type.holders()) {
    if (p != alice && type.size(p) >= 2 * k - 1) return p;
  }
  return std::nullopt;
}

inline std::string less_big_violation(const DistributionType& type, std::size_t k, std::optional<Agent> alice = {}) {
  if (type.holders().size() < 2) return "at least two agents hold cards";
  const auto c = less_big_conditions(type, k, alice.value_or(largest_holder(type)));
  return c.violation();
}

/// While no agent satisfies the lopsided inequality, the splitter announces
/// k cards of which she holds k-1; the (k-1, 1) part needs no announcements
/// and the rest recurses with the same Alice. Once some agent satisfies the
/// inequality the lopsided protocol takes over.
class LessBigStrategy final : public SplittingStrategy {
 public:
  LessBigStrategy(std::size_t k, Agent alice) : k_(k), alice_(alice) {}

  std::string name() const override { return "LessBig(k=" + std::to_string(k_) + ")"; }
  std::size_t k() const override { return k_; }
  Agent alice() const { return alice_; }

  bool splits(const DistributionType& type, Agent p, const CardSet& /*hand*/) const override {
    const auto s = less_big_splitter(type, k_, alice_);
    return s && *s == p;
  }

  bool allows(const DistributionType& /*type*/, Agent /*p*/, const CardSet& hand, const CardSet& t) const override {
    return t.size() == k_ && t.intersection_size(hand) == k_ - 1;
  }

  CardSet choose(const DistributionType& type, Agent /*p*/, const CardSet& hand, Rng& rng) const override {
    CardSet own(rng.sample(hand.cards(), k_ - 1));
    return own.with(rng.pick((type.deck() - hand).cards()));
  }

  ProtocolPtr sub_protocol(const DistributionType& sub, Agent first_mover) const override {
    if (sub.total() == k_ && sub.holders().size() == 2) {
      const auto parts = two_agent_parts(sub);
      if (!two_agent_violation(sub.size(parts.small), sub.size(parts.large), k_).empty()) {
        throw ProtocolDefect("less-big: split part is not a (k-1, 1) part");
      }
      return nullptr;
    }
    if (lopsided_violation(sub, k_).empty()) return solve_lopsided(sub, k_, first_mover);
    const auto c = less_big_conditions(sub, k_, alice_);
    if (!c.c1 || !c.c2 || !c.c3 || !c.c4) {
      throw ProtocolDefect("less-big: " + c.violation() + " fails after a split");
    }
    return std::make_shared<const ReductionProtocol>(sub, std::make_shared<const LessBigStrategy>(k_, alice_),
                                                     first_mover);
  }

 private:
  std::size_t k_;
  Agent alice_;
};

inline ProtocolPtr solve_less_big(const DistributionType& type, std::size_t k, Agent first_mover = 0) {
  if (const auto v = less_big_violation(type, k); !v.empty()) throw PreconditionError("less-big: " + v + " fails");
  if (lopsided_violation(type, k).empty()) return solve_lopsided(type, k, first_mover);
  return reduce(type, std::make_shared<const LessBigStrategy>(k, largest_holder(type)), first_mover);
}

/// The type left after the splitter gives up k-1 cards and `other` gives up
/// one; used to check that the conditions persist.
inline DistributionType less_big_step(const DistributionType& type, Agent splitter, Agent other, std::size_t k) {
  std::vector<std::size_t> sizes = type.sizes();
  sizes[splitter] -= k - 1;
  sizes[other] -= 1;
  return DistributionType(sizes);
}

}  // namespace sadi
