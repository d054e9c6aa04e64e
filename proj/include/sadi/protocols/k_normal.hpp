#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sadi/protocols/reduction.hpp"
#include "sadi/protocols/two_agent.hpp"

namespace sadi {

struct KNormalWitness {
  std::size_t k = 0;
  Agent distinguished = 0;
  std::vector<std::size_t> residues;
};

/// A type is k-normal when at least two agents hold cards, one agent A holds
/// -1 mod k cards, every other agent 0 mod k, and nobody more than (k-1)^2.
inline std::optional<KNormalWitness> is_k_normal(const DistributionType& type, std::size_t k) {
  if (k < 2 || type.holders().size() < 2) return std::nullopt;
  KNormalWitness w;
  w.k = k;
  std::optional<Agent> a;
  for (Agent p = 0; p < type.agents(); ++p) {
    const std::size_t s = type.size(p);
    w.residues.push_back(s % k);
    if (s > (k - 1) * (k - 1)) return std::nullopt;
    if (s % k == k - 1) {
      if (a) return std::nullopt;
      a = p;
    } else if (s % k != 0) {
      return std::nullopt;
    }
  }
  if (!a) return std::nullopt;
  w.distinguished = *a;
  return w;
}

inline std::string k_normal_violation(const DistributionType& type, std::size_t k) {
  if (k <= 2) return "k > 2";
  if (type.holders().size() < 2) return "at least two agents hold cards";
  std::size_t minus_one = 0;
  for (Agent p = 0; p < type.agents(); ++p) {
    const std::size_t s = type.size(p);
    if (s > (k - 1) * (k - 1)) return "s_P <= (k-1)^2 for agent " + std::to_string(p);
    if (s % k == k - 1) {
      ++minus_one;
    } else if (s % k != 0) {
      return "s_P = 0 mod k for agent " + std::to_string(p);
    }
  }
  if (minus_one != 1) return "exactly one agent holds -1 mod k cards";
  return {};
}

/// The distinguished agent A splits off k-1 of her cards plus one card b she
/// does not hold. The (k-1, 1) part needs no announcements; in the rest the
/// holder of b becomes the distinguished agent. Once only two agents hold
/// cards the two-agent construction applies directly.
class KNormalStrategy final : public SplittingStrategy {
 public:
  explicit KNormalStrategy(std::size_t k) : k_(k) {
    if (k_ <= 2) throw PreconditionError("k-normal strategy: k > 2 fails");
  }

  std::string name() const override { return "KNormal(k=" + std::to_string(k_) + ")"; }
  std::size_t k() const override { return k_; }

  bool splits(const DistributionType& type, Agent p, const CardSet& /*hand*/) const override {
    const auto w = is_k_normal(type, k_);
    return w && w->distinguished == p && type.holders().size() > 2;
  }

  bool allows(const DistributionType& /*type*/, Agent /*p*/, const CardSet& hand, const CardSet& t) const override {
    return t.size() == k_ && t.intersection_size(hand) == k_ - 1;
  }

  CardSet choose(const DistributionType& type, Agent /*p*/, const CardSet& hand, Rng& rng) const override {
    CardSet own(rng.sample(hand.cards(), k_ - 1));
    return own.with(rng.pick((type.deck() - hand).cards()));
  }

  std::optional<std::vector<CardSet>> enumerate(const DistributionType& type, Agent /*p*/, const CardSet& hand,
                                                std::size_t limit) const override {
    const CardSet rest = type.deck() - hand;
    std::vector<CardSet> out;
    bool overflow = false;
    for_each_combination(hand.cards(), k_ - 1, [&](const std::vector<Card>& own) {
      for (Card b : rest) {
        if (out.size() >= limit) {
          overflow = true;
          return false;
        }
        out.push_back(CardSet(own).with(b));
      }
      return true;
    });
    if (overflow) return std::nullopt;
    return out;
  }

  ProtocolPtr sub_protocol(const DistributionType& sub, Agent first_mover) const override {
    if (sub.holders().size() == 2) {
      const auto parts = two_agent_parts(sub);
      const auto v = two_agent_violation(sub.size(parts.small), sub.size(parts.large), k_);
      if (!v.empty()) throw ProtocolDefect("k-normal part " + describe(sub) + ": " + v + " fails");
      return nullptr;
    }
    if (const auto v = k_normal_violation(sub, k_); !v.empty()) {
      throw ProtocolDefect("k-normal part " + describe(sub) + ": " + v + " fails");
    }
    return std::make_shared<const ReductionProtocol>(sub, std::make_shared<const KNormalStrategy>(k_), first_mover);
  }

 private:
  static std::string describe(const DistributionType& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.agents(); ++i) s += (i ? "," : "") + std::to_string(t.size(i));
    return s + ")";
  }

  std::size_t k_;
};

/// Protocol k-solving a k-normal type: the empty two-agent protocol when
/// only two agents hold cards, otherwise the reduction above.
inline ProtocolPtr solve_k_normal(const DistributionType& type, std::size_t k) {
  if (const auto v = k_normal_violation(type, k); !v.empty()) throw PreconditionError("k-normal: " + v + " fails");
  if (type.holders().size() == 2) return std::make_shared<const TwoAgentProtocol>(type, k);
  return reduce(type, std::make_shared<const KNormalStrategy>(k));
}

/// (|s|+1)/k - 1: the number of plan levels when every split leaves at
/// least three holders until 2k-1 cards remain.
inline std::size_t k_normal_depth(const DistributionType& type, std::size_t k) {
  return (type.total() + 1) / k - 1;
}

/// Deepest recursion over every way the extra card can fall, counting the
/// two-agent leaf as a level.
inline std::size_t k_normal_plan_depth(const DistributionType& type, std::size_t k) {
  const auto w = is_k_normal(type, k);
  if (!w) throw PreconditionError("k_normal_plan_depth: type is not k-normal");
  std::map<std::vector<std::size_t>, std::size_t> memo;
  auto rec = [&](auto&& self, const std::vector<std::size_t>& s, Agent a) -> std::size_t {
    std::size_t holders = 0;
    for (std::size_t x : s) holders += x > 0;
    if (holders <= 2) return 1;
    auto key = s;
    key.push_back(a);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t best = 0;
    for (Agent q = 0; q < s.size(); ++q) {
      if (q == a || s[q] == 0) continue;
      auto u = s;
      u[a] -= k - 1;
      u[q] -= 1;
      best = std::max(best, self(self, u, q));
    }
    return memo[key] = best + 1;
  };
  return rec(rec, type.sizes(), w->distinguished);
}

}  // namespace sadi
