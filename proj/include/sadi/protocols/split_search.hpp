#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sadi/protocols/cover_hands.hpp"
#include "sadi/protocols/reduction.hpp"

namespace sadi {

/// Decides, for a fixed k, which types can be k-solved by repeatedly having
/// one agent announce k cards of which she holds k-1, ending at two-agent or
/// lopsided parts. Results are memoized on the sorted multiset of hand sizes.
class SplitSearchTable {
 public:
  explicit SplitSearchTable(std::size_t k) : k_(k) {}

  std::size_t k() const { return k_; }

  bool solvable(const DistributionType& type) const { return solvable(type.sizes()); }

  /// The first agent whose k-1 + 1 split leaves solvable residues for every
  /// holder of the extra card.
  std::optional<Agent> splitter(const DistributionType& type) const {
    const auto s = type.sizes();
    for (Agent p : type.holders()) {
      if (splits_well(s, p)) return p;
    }
    return std::nullopt;
  }

  bool terminal(const DistributionType& type) const {
    const auto h = type.holders();
    if (h.size() == 2) return two_agent_violation(type.size(h[0]), type.size(h[1]), k_).empty();
    return h.size() > 2 && lopsided_violation(type, k_).empty();
  }

 private:
  bool splits_well(const std::vector<std::size_t>& s, std::size_t p) const {
    if (s[p] + 1 < k_) return false;
    bool any = false;
    for (std::size_t q = 0; q < s.size(); ++q) {
      if (q == p || s[q] == 0) continue;
      any = true;
      auto u = s;
      u[p] -= k_ - 1;
      u[q] -= 1;
      if (u[p] == 0 && u[q] == 0) return false;
      if (!solvable(u)) return false;
    }
    return any;
  }

  bool solvable(std::vector<std::size_t> s) const {
    s.erase(std::remove(s.begin(), s.end(), std::size_t{0}), s.end());
    std::sort(s.begin(), s.end());
    if (s.size() < 2 || k_ < 3) return false;
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (const auto it = memo_.find(s); it != memo_.end()) return it->second;
    }
    bool r = terminal(DistributionType(s));
    for (std::size_t p = 0; !r && p < s.size(); ++p) r = splits_well(s, p);
    std::lock_guard<std::mutex> lock(mu_);
    memo_[s] = r;
    return r;
  }

  std::size_t k_;
  mutable std::mutex mu_;
  mutable std::map<std::vector<std::size_t>, bool> memo_;
};

inline std::string split_search_violation(const DistributionType& type, std::size_t k) {
  if (k < 3) return "k >= 3";
  if (type.holders().size() < 3) return "at least three agents hold cards";
  if (!SplitSearchTable(k).solvable(type)) return "no (k-1, 1) splitting sequence ends in solvable parts";
  return {};
}

/// Splitting by search: the first agent whose (k-1, 1) split leaves solvable
/// residues announces k cards of which she holds k-1. Two-agent and lopsided
/// parts end the recursion.
class SplitSearchStrategy final : public SplittingStrategy {
 public:
  explicit SplitSearchStrategy(std::shared_ptr<const SplitSearchTable> table) : table_(std::move(table)) {}

  std::string name() const override { return "SplitSearch(k=" + std::to_string(k()) + ")"; }
  std::size_t k() const override { return table_->k(); }

  bool splits(const DistributionType& type, Agent p, const CardSet& /*hand*/) const override {
    const auto s = table_->splitter(type);
    return s && *s == p;
  }

  bool allows(const DistributionType& /*type*/, Agent /*p*/, const CardSet& hand, const CardSet& t) const override {
    return t.size() == k() && t.intersection_size(hand) == k() - 1;
  }

  CardSet choose(const DistributionType& type, Agent /*p*/, const CardSet& hand, Rng& rng) const override {
    CardSet own(rng.sample(hand.cards(), k() - 1));
    return own.with(rng.pick((type.deck() - hand).cards()));
  }

  ProtocolPtr sub_protocol(const DistributionType& sub, Agent first_mover) const override {
    const auto h = sub.holders();
    if (h.size() == 2) {
      if (!table_->terminal(sub)) throw ProtocolDefect("split search: two-agent part is not k-solvable");
      return nullptr;
    }
    if (lopsided_violation(sub, k()).empty()) return solve_lopsided(sub, k(), first_mover);
    if (!table_->splitter(sub)) throw ProtocolDefect("split search: part has no splitter");
    return std::make_shared<const ReductionProtocol>(sub, std::make_shared<const SplitSearchStrategy>(table_),
                                                     first_mover);
  }

 private:
  std::shared_ptr<const SplitSearchTable> table_;
};

inline ProtocolPtr solve_split_search(const DistributionType& type, std::size_t k, Agent first_mover = 0) {
  if (const auto v = split_search_violation(type, k); !v.empty()) throw PreconditionError("split search: " + v + " fails");
  if (lopsided_violation(type, k).empty()) return solve_lopsided(type, k, first_mover);
  auto table = std::make_shared<const SplitSearchTable>(k);
  return reduce(type, std::make_shared<const SplitSearchStrategy>(table), first_mover);
}

}  // namespace sadi
