#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sadi/protocol.hpp"

namespace sadi {

enum class IgnoranceMode { kExhaustive, kWitness };

inline const char* mode_name(IgnoranceMode m) { return m == IgnoranceMode::kExhaustive ? "exhaustive" : "witness"; }

/// The deals Eaves cannot rule out after a run. `exact` is false only in
/// witness mode when the candidates were not provably a superset of the
/// true set.
struct IgnoranceSet {
  std::vector<Deal> deals;
  IgnoranceMode mode = IgnoranceMode::kExhaustive;
  bool exact = true;
};

/// True iff (deal, run) is an execution. Every action is checked for truth
/// first, in reverse order since late announcements are the most selective;
/// a protocol only ever offers announcements that contain the deal.
inline bool is_truthful_execution(const Protocol& protocol, const Deal& deal, const Run& run) {
  for (auto it = run.rbegin(); it != run.rend(); ++it) {
    if (!it->is_end() && !extension_contains(*it, deal)) return false;
  }
  return is_execution(protocol, deal, run);
}

namespace detail {

template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n / 64, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&, j] {
      for (std::size_t i = j; i < n; i += jobs) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Exact ignorance set by filtering an explicit deal space.
inline IgnoranceSet ignorance_set(const Protocol& protocol, const Run& run, const std::vector<Deal>& space,
                                  unsigned jobs = 1) {
  std::vector<char> keep(space.size(), 0);
  detail::parallel_for(space.size(), jobs,
                       [&](std::size_t i) { keep[i] = is_truthful_execution(protocol, space[i], run) ? 1 : 0; });
  IgnoranceSet ig;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (keep[i]) ig.deals.push_back(space[i]);
  }
  return ig;
}

/// Exact ignorance set over every deal of the protocol's type.
inline IgnoranceSet ignorance_set(const Protocol& protocol, const Run& run,
                                  std::uint64_t budget = kDefaultEnumerationBudget, unsigned jobs = 1) {
  return ignorance_set(protocol, run, enumerate_deals(protocol.type(), budget), jobs);
}

namespace detail {

/// Deals allowed by the explicit announcements of a run: DealSets pin the
/// whole deal, HandsIn pins one hand. Returns nullopt when these leave more
/// than one holder free or produce more than `limit` candidates.
inline std::optional<std::vector<Deal>> pinned_candidates(const DistributionType& type, const Run& run,
                                                          std::size_t limit) {
  for (const auto& a : run) {
    if (a.kind() == AnnouncementKind::kDealSet) {
      std::vector<Deal> out;
      for (const Deal& d : a.deals()) {
        if (d.has_type(type) && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
      }
      return out;
    }
  }
  std::vector<std::optional<std::vector<CardSet>>> allowed(type.agents());
  for (const auto& a : run) {
    if (a.kind() != AnnouncementKind::kHandsIn || a.agent() >= type.agents()) continue;
    auto& slot = allowed[a.agent()];
    if (!slot) {
      slot = a.hands();
    } else {
      std::vector<CardSet> both;
      for (const auto& h : *slot) {
        if (std::find(a.hands().begin(), a.hands().end(), h) != a.hands().end()) both.push_back(h);
      }
      slot = both;
    }
  }
  std::optional<Agent> free;
  for (Agent p : type.holders()) {
    if (allowed[p]) continue;
    if (free) return std::nullopt;
    free = p;
  }
  std::vector<Deal> out;
  std::vector<CardSet> hands(type.agents());
  bool overflow = false;
  auto rec = [&](auto&& self, Agent p, const CardSet& used) -> void {
    if (overflow) return;
    if (p == type.agents()) {
      if (free) hands[*free] = type.deck() - used;
      if (free && hands[*free].size() != type.size(*free)) return;
      if (out.size() >= limit) {
        overflow = true;
        return;
      }
      out.emplace_back(hands);
      return;
    }
    if (type.size(p) == 0) {
      hands[p] = CardSet();
      self(self, p + 1, used);
      return;
    }
    if (free && *free == p) {
      self(self, p + 1, used);
      return;
    }
    for (const auto& h : *allowed[p]) {
      if (h.size() != type.size(p) || !h.is_subset_of(type.deck()) || !h.disjoint(used)) continue;
      hands[p] = h;
      self(self, p + 1, used | h);
    }
  };
  rec(rec, 0, CardSet());
  if (overflow) return std::nullopt;
  return out;
}

}  // namespace detail

/// Ignorance set from candidates, each validated by replay. When the run's
/// explicit announcements pin the candidates, the result is exact: every
/// execution lies among them. Otherwise `fallback` is replayed and the
/// result is only a certified subset.
inline IgnoranceSet witness_ignorance_set(const Protocol& protocol, const Run& run,
                                          const std::vector<Deal>& fallback = {}, std::size_t limit = 1'000'000) {
  IgnoranceSet ig;
  ig.mode = IgnoranceMode::kWitness;
  auto pinned = detail::pinned_candidates(protocol.type(), run, limit);
  ig.exact = pinned.has_value();
  const std::vector<Deal>& candidates = pinned ? *pinned : fallback;
  for (const Deal& d : candidates) {
    if (is_truthful_execution(protocol, d, run)) ig.deals.push_back(d);
  }
  return ig;
}

}  // namespace sadi
