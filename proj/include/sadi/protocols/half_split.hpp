#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sadi/protocols/fano.hpp"
#include "sadi/protocols/reduction.hpp"

namespace sadi {

inline std::string half_split_violation(const DistributionType& type) {
  if (type.total() != 14 || type.holders().size() != 3) return "type is a permutation of (6,7,1)";
  if (detail::holders_of_size(type, 6, 0).size() != 1 || detail::holders_of_size(type, 7, 0).size() != 1 ||
      detail::holders_of_size(type, 1, 0).size() != 1) {
    return "type is a permutation of (6,7,1)";
  }
  return {};
}

/// For (6,7,1): the six-card agent splits the deck into two sets of seven
/// cards holding three of hers in each. The parts are (3,3,1) and (3,4,0),
/// both 7-solvable through the Fano plane.
class HalfSplitStrategy final : public SplittingStrategy {
 public:
  std::string name() const override { return "HalfSplit"; }
  std::size_t k() const override { return 7; }

  bool splits(const DistributionType& type, Agent p, const CardSet& /*hand*/) const override {
    return half_split_violation(type).empty() && type.size(p) == 6;
  }

  bool allows(const DistributionType& /*type*/, Agent /*p*/, const CardSet& hand, const CardSet& t) const override {
    return t.size() == 7 && t.intersection_size(hand) == 3;
  }

  CardSet choose(const DistributionType& type, Agent /*p*/, const CardSet& hand, Rng& rng) const override {
    CardSet t(rng.sample(hand.cards(), 3));
    return t | CardSet(rng.sample((type.deck() - hand).cards(), 4));
  }

  std::optional<std::vector<CardSet>> enumerate(const DistributionType& type, Agent /*p*/, const CardSet& hand,
                                                std::size_t limit) const override {
    std::vector<CardSet> out;
    bool overflow = false;
    const auto rest = (type.deck() - hand).cards();
    for_each_combination(hand.cards(), 3, [&](const std::vector<Card>& own) {
      for_each_combination(rest, 4, [&](const std::vector<Card>& other) {
        if (out.size() >= limit) {
          overflow = true;
          return false;
        }
        out.push_back(CardSet(own) | CardSet(other));
        return true;
      });
      return !overflow;
    });
    if (overflow) return std::nullopt;
    return out;
  }

  ProtocolPtr sub_protocol(const DistributionType& sub, Agent first_mover) const override {
    if (fano331_violation(sub).empty()) return std::make_shared<const Fano331Protocol>(sub, first_mover);
    if (fano_line_violation(sub).empty()) return std::make_shared<const FanoLineProtocol>(sub, first_mover);
    throw ProtocolDefect("half split: part is neither (3,3,1) nor (3,4,0)");
  }
};

inline ProtocolPtr solve_half_split(const DistributionType& type) {
  if (const auto v = half_split_violation(type); !v.empty()) throw PreconditionError("half split: " + v);
  return reduce(type, std::make_shared<const HalfSplitStrategy>());
}

}  // namespace sadi
