#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sadi/verifier/properties.hpp"

namespace sadi {

/// How executions are enumerated.
///
/// Branches::kAll explores every branch of the protocol from every deal at
/// once: each node is a run prefix together with the deals for which it is
/// an execution, so terminal nodes carry their exact ignorance sets. It
/// needs every action set to be listable and falls back to one seeded run
/// per deal when a set is not listable or the node budget runs out.
///
/// Branches::kSeeded executes one seeded run per deal (all deals, or
/// `samples` deals drawn with `seed`) and computes each ignorance set in
/// the chosen mode.
struct VerifyOptions {
  enum class Deals { kAll, kSample };
  enum class Branches { kAll, kSeeded };
  Deals deals = Deals::kAll;
  Branches branches = Branches::kAll;
  IgnoranceMode ignorance = IgnoranceMode::kExhaustive;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::size_t branch_budget = 10'000'000;
  std::size_t action_limit = 4096;
  unsigned jobs = 1;
};

namespace detail {

inline std::vector<Deal> sample_deals(const DistributionType& type, std::size_t count, Rng& rng) {
  std::vector<Deal> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Card> deck = type.deck().cards();
    rng.shuffle(deck);
    std::vector<CardSet> hands;
    std::size_t at = 0;
    for (std::size_t s : type.sizes()) {
      hands.emplace_back(std::vector<Card>(deck.begin() + static_cast<std::ptrdiff_t>(at),
                                           deck.begin() + static_cast<std::ptrdiff_t>(at + s)));
      at += s;
    }
    out.emplace_back(std::move(hands));
  }
  return out;
}

inline std::string run_key(const Run& run) {
  std::string k;
  for (const auto& a : run) k += a.key() + "\n";
  return k;
}

inline std::vector<std::string> action_keys(const std::vector<Announcement>& actions) {
  std::vector<std::string> keys;
  for (const auto& a : actions) keys.push_back(a.key());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

/// Explores every branch. Returns false when the exploration had to stop.
inline bool explore_all(const Protocol& protocol, const std::vector<Deal>& space, const PropertySet& props,
                        const VerifyOptions& opt, VerificationReport& report) {
  struct Node {
    Run rho;
    std::vector<std::size_t> members;
  };
  const std::size_t guard = default_max_run_length(protocol.type());
  std::vector<Node> stack;
  stack.push_back({Run{}, std::vector<std::size_t>(space.size())});
  for (std::size_t i = 0; i < space.size(); ++i) stack.back().members[i] = i;
  std::map<Deal, std::size_t> index;
  for (std::size_t i = 0; i < space.size(); ++i) index.emplace(space[i], i);
  std::size_t nodes = 0;
  VerificationReport local;
  local.max_counterexamples = report.max_counterexamples;
  local.require("wellformed");
  local.require("terminating");

  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (++nodes > opt.branch_budget) return false;
    if (protocol.finished(node.rho)) {
      Run run = node.rho;
      run.push_back(Announcement::end());
      IgnoranceSet ig;
      for (std::size_t i : node.members) ig.deals.push_back(space[i]);
      check_terminal_run(protocol.type(), run, ig, props, local);
      continue;
    }
    if (node.rho.size() >= guard) {
      Counterexample c{"terminating", space[node.members.front()], node.rho, {}, {}, {}, "run length guard reached"};
      local.fail(std::move(c));
      continue;
    }
    const Agent mover = protocol.mover(node.rho.size());
    std::map<std::string, std::pair<Announcement, std::vector<std::size_t>>> offered;
    // Actions are listed once per hand of the mover; the other deals with
    // that hand inherit the listing, and the permits check below confirms it.
    std::map<CardSet, std::pair<std::size_t, std::vector<std::string>>> by_hand;
    for (std::size_t i : node.members) {
      const Deal& h = space[i];
      if (const auto seen = by_hand.find(h.hand(mover)); seen != by_hand.end()) {
        for (const auto& key : seen->second.second) offered.at(key).second.push_back(i);
        continue;
      }
      const auto acts = protocol.actions(h, node.rho, opt.action_limit);
      if (!acts) return false;
      auto wf = [&](std::string detail) {
        local.fail(Counterexample{"wellformed", h, node.rho, {}, mover, {}, std::move(detail)});
      };
      if (acts->empty()) wf("empty action set");
      std::vector<std::string> keys;
      keys.reserve(acts->size());
      for (const auto& a : *acts) {
        if (a.is_end()) {
          wf("End offered before the run is finished");
          continue;
        }
        std::string key = a.key();
        auto& entry = offered.try_emplace(key, a, std::vector<std::size_t>{}).first->second.second;
        if (!entry.empty() && entry.back() == i) continue;
        entry.push_back(i);
        keys.push_back(std::move(key));
      }
      by_hand.emplace(h.hand(mover), std::make_pair(i, std::move(keys)));
    }
    // Members of a child are the deals permitting the action; they must be
    // exactly the deals that listed it.
    for (auto& [key, entry] : offered) {
      auto& [a, listed] = entry;
      Node child{node.rho, {}};
      if (a.kind() == AnnouncementKind::kDealSet) {
        // Only the listed deals can lie in the extension.
        for (const Deal& d : a.deals()) {
          const auto it = index.find(d);
          if (it == index.end() || !std::binary_search(node.members.begin(), node.members.end(), it->second)) continue;
          if (protocol.permits(d, node.rho, a)) child.members.push_back(it->second);
        }
        std::sort(child.members.begin(), child.members.end());
        child.members.erase(std::unique(child.members.begin(), child.members.end()), child.members.end());
      } else {
        for (std::size_t i : node.members) {
          if (extension_contains(a, space[i]) && protocol.permits(space[i], node.rho, a)) child.members.push_back(i);
        }
      }
      if (child.members != listed) {
        std::vector<std::size_t> diff;
        std::set_symmetric_difference(child.members.begin(), child.members.end(), listed.begin(), listed.end(),
                                      std::back_inserter(diff));
        const Deal& bad = space[diff.front()];
        const std::size_t rep = by_hand.at(bad.hand(mover)).first;
        if (rep != diff.front()) {
          local.fail(Counterexample{"wellformed", bad, node.rho, {}, mover, space[rep],
                                    "two executions with the same hand of the mover offer different actions: " + key});
        } else {
          local.fail(Counterexample{"wellformed", bad, node.rho, {}, mover, {},
                                    std::string(extension_contains(a, bad) ? "offered announcement is not permitted: "
                                                                           : "offered announcement does not contain the deal: ") +
                                        key});
        }
      }
      child.rho.push_back(a);
      stack.push_back(std::move(child));
    }
  }
  report.merge(local);
  return true;
}

/// One seeded run per deal; ignorance sets per distinct run.
inline void explore_seeded(const Protocol& protocol, const std::vector<Deal>& deals,
                           const std::vector<Deal>* space, const PropertySet& props, const VerifyOptions& opt,
                           VerificationReport& report) {
  report.require("wellformed");
  report.require("terminating");
  std::map<std::string, std::pair<Run, std::size_t>> runs;
  for (std::size_t i = 0; i < deals.size(); ++i) {
    const Deal& h = deals[i];
    Run run;
    try {
      run = execute(protocol, h, opt.seed + i);
    } catch (const ProtocolDefect& e) {
      const std::string what = e.what();
      const bool guard = what.find("length guard") != std::string::npos;
      report.fail(Counterexample{guard ? "terminating" : "wellformed", h, Run{}, {}, {}, {}, what});
      continue;
    }
    std::string key = run_key(run);
    runs.emplace(std::move(key), std::make_pair(std::move(run), i));
  }

  std::vector<std::pair<Run, std::size_t>> distinct;
  for (auto& [key, v] : runs) distinct.push_back(std::move(v));
  std::vector<IgnoranceSet> igs(distinct.size());
  const bool exhaustive = space != nullptr;
  if (exhaustive) {
    for (std::size_t r = 0; r < distinct.size(); ++r) {
      igs[r] = ignorance_set(protocol, distinct[r].first, *space, opt.jobs);
    }
  } else {
    parallel_for(distinct.size(), opt.jobs, [&](std::size_t r) {
      const Deal& h = deals[distinct[r].second];
      auto fallback = protocol.certified_diffusion(distinct[r].first).value_or(std::vector<Deal>{});
      if (std::find(fallback.begin(), fallback.end(), h) == fallback.end()) fallback.push_back(h);
      igs[r] = witness_ignorance_set(protocol, distinct[r].first, fallback);
    });
  }

  for (std::size_t r = 0; r < distinct.size(); ++r) {
    const auto& [run, i] = distinct[r];
    const Deal& h = deals[i];
    const auto& ig = igs[r];
    if (std::find(ig.deals.begin(), ig.deals.end(), h) == ig.deals.end()) {
      report.fail(Counterexample{"wellformed", h, run, {}, {}, {}, "the executed run does not replay on its own deal"});
      continue;
    }
    // Measurability along the run, against the executions sharing it.
    for (std::size_t step = 0; step + 1 < run.size(); ++step) {
      const Run prefix(run.begin(), run.begin() + static_cast<std::ptrdiff_t>(step));
      const Agent mover = protocol.mover(step);
      const auto mine = protocol.actions(h, prefix, opt.action_limit);
      if (!mine) continue;
      const auto keys = action_keys(*mine);
      for (const Deal& other : ig.deals) {
        if (other == h || other.hand(mover) != h.hand(mover)) continue;
        const auto theirs = protocol.actions(other, prefix, opt.action_limit);
        if (theirs && action_keys(*theirs) != keys) {
          report.fail(Counterexample{"wellformed", h, prefix, {}, mover, other,
                                     "two executions with the same hand of the mover offer different actions"});
        }
      }
    }
    if (!ig.exact) report.ignorance_mode = "witness (certified subset)";
    check_terminal_run(protocol.type(), run, ig, props, report);
  }
}

}  // namespace detail

/// Checks `props` on the executions selected by `opt`.
inline VerificationReport verify(const Protocol& protocol, const PropertySet& props, const VerifyOptions& opt = {}) {
  VerificationReport report;
  report.protocol = protocol.name();
  report.sizes = protocol.type().sizes();
  report.seed = opt.seed;
  std::optional<std::vector<Deal>> space;
  const bool need_space = opt.deals == VerifyOptions::Deals::kAll || opt.ignorance == IgnoranceMode::kExhaustive;
  if (need_space) space = enumerate_deals(protocol.type(), opt.budget);

  std::vector<Deal> deals;
  if (opt.deals == VerifyOptions::Deals::kAll) {
    deals = *space;
  } else {
    Rng rng(opt.seed);
    deals = detail::sample_deals(protocol.type(), opt.samples, rng);
  }
  report.deals_checked = deals.size();

  if (opt.branches == VerifyOptions::Branches::kAll && opt.deals == VerifyOptions::Deals::kAll) {
    if (detail::explore_all(protocol, *space, props, opt, report)) {
      report.coverage = "all branches of all deals";
      return report;
    }
    report.coverage = "one seeded run per deal (branches not listable within budget)";
  } else {
    report.coverage = opt.deals == VerifyOptions::Deals::kAll ? "one seeded run per deal"
                                                              : "one seeded run per sampled deal";
  }
  report.ignorance_mode = mode_name(opt.ignorance);
  detail::explore_seeded(protocol, deals, opt.ignorance == IgnoranceMode::kExhaustive ? &*space : nullptr, props, opt,
                         report);
  return report;
}

enum class InformativityLevel { kWI, kI };
enum class SafetyLevel { kDS, kSP, kS, kSS };

inline VerificationReport check_informative(const Protocol& protocol, InformativityLevel level,
                                            const VerifyOptions& opt = {}) {
  PropertySet p;
  (level == InformativityLevel::kI ? p.informative : p.weakly_informative) = true;
  return verify(protocol, p, opt);
}

/// `agent` is used for S_P only.
inline VerificationReport check_safety(const Protocol& protocol, SafetyLevel level, const VerifyOptions& opt = {},
                                       Agent agent = 0) {
  PropertySet p;
  switch (level) {
    case SafetyLevel::kDS: p.deal_safe = true; break;
    case SafetyLevel::kSP: p.safe_for.push_back(agent); break;
    case SafetyLevel::kS: p.safe = true; break;
    case SafetyLevel::kSS: p.strongly_safe = true; break;
  }
  return verify(protocol, p, opt);
}

inline VerificationReport check_wellformed(const Protocol& protocol, const VerifyOptions& opt = {}) {
  return verify(protocol, PropertySet{}, opt);
}

inline VerificationReport check_k_solution(const Protocol& protocol, std::size_t k, const VerifyOptions& opt = {}) {
  PropertySet p;
  p.informative = true;
  p.safe = true;
  p.k = k;
  return verify(protocol, p, opt);
}

/// Checks a single recorded execution: that it replays, then `props` on its
/// ignorance set.
inline VerificationReport verify_trace(const Protocol& protocol, const Deal& deal, const Run& run,
                                       const PropertySet& props, const VerifyOptions& opt = {}) {
  VerificationReport report;
  report.protocol = protocol.name();
  report.sizes = protocol.type().sizes();
  report.deals_checked = 1;
  report.coverage = "one recorded run";
  report.require("execution");
  if (!is_terminal(run) || !is_truthful_execution(protocol, deal, run)) {
    report.fail(Counterexample{"execution", deal, run, {}, {}, {}, "the run is not a terminal execution on the deal"});
    return report;
  }
  IgnoranceSet ig;
  if (opt.ignorance == IgnoranceMode::kExhaustive) {
    ig = ignorance_set(protocol, run, opt.budget, opt.jobs);
  } else {
    auto fallback = protocol.certified_diffusion(run).value_or(std::vector<Deal>{});
    if (std::find(fallback.begin(), fallback.end(), deal) == fallback.end()) fallback.push_back(deal);
    ig = witness_ignorance_set(protocol, run, fallback);
  }
  report.ignorance_mode = ig.exact ? mode_name(ig.mode) : "witness (certified subset)";
  check_terminal_run(protocol.type(), run, ig, props, report);
  return report;
}

}  // namespace sadi
