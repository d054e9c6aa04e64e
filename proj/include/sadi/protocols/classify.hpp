#pragma once

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sadi/protocols/cover_hands.hpp"
#include "sadi/protocols/fano.hpp"
#include "sadi/protocols/half_split.hpp"
#include "sadi/protocols/k_normal.hpp"
#include "sadi/protocols/less_big.hpp"
#include "sadi/protocols/split_search.hpp"
#include "sadi/protocols/three_agent.hpp"
#include "sadi/protocols/two_agent.hpp"

namespace sadi {

/// Certificate tree naming the solver for a type and its parameters.
struct SolverPlan {
  std::string solver;
  std::vector<std::size_t> sizes;
  std::size_t k = 0;
  nlohmann::json params = nlohmann::json::object();
  std::vector<SolverPlan> subplans;
  std::optional<CardSet> deck;  ///< absent for the default deck {0..n-1}

  DistributionType type() const { return deck ? DistributionType(sizes, *deck) : DistributionType(sizes); }
};

inline nlohmann::json to_json(const SolverPlan& plan) {
  nlohmann::json j;
  j["solver"] = plan.solver;
  j["sizes"] = plan.sizes;
  j["k"] = plan.k;
  if (plan.deck) j["deck"] = format_cards(*plan.deck);
  j["params"] = plan.params;
  j["subplans"] = nlohmann::json::array();
  for (const auto& sub : plan.subplans) j["subplans"].push_back(to_json(sub));
  return j;
}

inline SolverPlan plan_from_json(const nlohmann::json& j) {
  SolverPlan plan;
  try {
    plan.solver = j.at("solver").get<std::string>();
    plan.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    plan.k = j.at("k").get<std::size_t>();
    if (j.contains("deck")) plan.deck = parse_cards(j.at("deck").get<std::string>());
    if (j.contains("params")) plan.params = j.at("params");
    if (j.contains("subplans")) {
      for (const auto& sub : j.at("subplans")) plan.subplans.push_back(plan_from_json(sub));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("solver plan: ") + e.what());
  }
  return plan;
}

/// A plan, or the reasons every solver declined.
struct Classification {
  std::optional<SolverPlan> plan;
  std::vector<std::string> reasons;

  bool solvable() const { return plan.has_value(); }
};

inline nlohmann::json to_json(const Classification& c) {
  if (c.plan) return to_json(*c.plan);
  return {{"solver", "Unsolvable"}, {"verdict", "unsolvable by this toolkit"}, {"reasons", c.reasons}};
}

namespace detail {

inline SolverPlan make_plan(std::string solver, const DistributionType& type, std::size_t k) {
  SolverPlan plan;
  plan.solver = std::move(solver);
  plan.sizes = type.sizes();
  plan.k = k;
  if (type.deck() != DistributionType(type.sizes()).deck()) plan.deck = type.deck();
  return plan;
}

inline std::optional<std::size_t> smallest_two_agent_k(const DistributionType& type) {
  const auto parts = two_agent_parts(type);
  const std::size_t a = type.size(parts.small);
  const std::size_t b = type.size(parts.large);
  if (a == 0) return std::nullopt;
  const std::size_t k = std::max<std::size_t>(2, (b + a - 1) / a + 1);
  if (!two_agent_violation(a, b, k).empty()) return std::nullopt;
  return k;
}

}  // namespace detail

inline Classification classify(const DistributionType& type) {
  Classification out;
  auto& why = out.reasons;
  const auto holders = type.holders();
  const std::size_t n = type.total();
  if (holders.size() < 2) {
    why.push_back("fewer than two agents hold cards");
    return out;
  }
  if (holders.size() == 2) {
    if (const auto k = detail::smallest_two_agent_k(type)) {
      out.plan = detail::make_plan("TwoAgent", type, *k);
      return out;
    }
    why.push_back("TwoAgent: no admissible k");
  }

  if (const auto v = fano331_violation(type); v.empty()) {
    out.plan = detail::make_plan("Fano331", type, 7);
    return out;
  } else {
    why.push_back("Fano331: " + v);
  }

  if (const auto v = half_split_violation(type); v.empty()) {
    auto plan = detail::make_plan("Reduction", type, 7);
    plan.params["strategy"] = "HalfSplit";
    plan.subplans.push_back(detail::make_plan("Fano331", DistributionType({3, 3, 1}), 7));
    plan.subplans.push_back(detail::make_plan("FanoLine2Agent", DistributionType({3, 4}), 7));
    out.plan = plan;
    return out;
  } else {
    why.push_back("HalfSplit: " + v);
  }

  for (Agent p : holders) {
    if (const auto v = three_agent_violation(type, p); v.empty()) {
      auto plan = detail::make_plan("ThreeAgentSpread", type, type.size(p) + 1);
      plan.params["announcer"] = p;
      out.plan = plan;
      return out;
    } else {
      why.push_back("ThreeAgentSpread(announcer=" + std::to_string(p) + "): " + v);
    }
  }

  for (std::size_t k = 3; k <= n; ++k) {
    if (const auto w = is_k_normal(type, k)) {
      auto plan = detail::make_plan("KNormal", type, k);
      plan.params["distinguished"] = w->distinguished;
      plan.params["depth"] = k_normal_depth(type, k);
      out.plan = plan;
      return out;
    }
  }
  why.push_back("KNormal: no k in [3, |s|]");

  for (std::size_t k = 3; k * k <= n; ++k) {
    if (lopsided_violation(type, k).empty()) {
      auto plan = detail::make_plan("Lopsided", type, k);
      plan.params["alice"] = *lopsided_agent(type, k);
      out.plan = plan;
      return out;
    }
  }
  why.push_back("Lopsided: no k with k^2 <= |s|");

  for (std::size_t k = 4; k * k <= n; ++k) {
    if (less_big_violation(type, k).empty()) {
      auto plan = detail::make_plan("LessBig", type, k);
      plan.params["alice"] = largest_holder(type);
      out.plan = plan;
      return out;
    }
  }
  why.push_back("LessBig: no k >= 4 with k^2 <= |s|");

  if (const auto v = big_hand_violation(type); v.empty()) {
    const auto bp = big_hand_parameters(type);
    auto plan = detail::make_plan("BigHand", type, cover_part2(n, bp.b, bp.c).sets.size());
    plan.params["alice"] = bp.alice;
    plan.params["c"] = bp.c;
    out.plan = plan;
    return out;
  } else {
    why.push_back("BigHand: " + v);
  }

  for (std::size_t k = 3; k <= n; ++k) {
    if (split_search_violation(type, k).empty()) {
      auto plan = detail::make_plan("Reduction", type, k);
      plan.params["strategy"] = "SplitSearch";
      out.plan = plan;
      return out;
    }
  }
  why.push_back("SplitSearch: no k in [3, |s|]");
  return out;
}

/// The protocol a plan describes.
inline ProtocolPtr instantiate(const SolverPlan& plan) {
  const DistributionType type = plan.type();
  const std::string& s = plan.solver;
  if (s == "TwoAgent") return std::make_shared<const TwoAgentProtocol>(type, plan.k);
  if (s == "Fano331") return std::make_shared<const Fano331Protocol>(type);
  if (s == "FanoLine2Agent") return std::make_shared<const FanoLineProtocol>(type);
  if (s == "ThreeAgentSpread") {
    const Agent a = plan.params.at("announcer").get<Agent>();
    return std::make_shared<const ThreeAgentSpreadProtocol>(type, a, a);
  }
  if (s == "KNormal") return solve_k_normal(type, plan.k);
  if (s == "Lopsided") return solve_lopsided(type, plan.k);
  if (s == "LessBig") return solve_less_big(type, plan.k);
  if (s == "BigHand") return solve_big_hand(type);
  if (s == "Reduction") {
    const std::string strategy = plan.params.value("strategy", "");
    if (strategy == "HalfSplit") return solve_half_split(type);
    if (strategy == "SplitSearch") return solve_split_search(type, plan.k);
  }
  throw InvalidArgument("instantiate: unknown solver '" + s + "'");
}

}  // namespace sadi
