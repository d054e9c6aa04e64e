#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sadi/json.hpp"

namespace sadi {

/// A failing execution: `deal` with `run` is an execution, and the named
/// clause fails there. `other` is a second execution with the same run when
/// the clause is about one (e.g. the deal an agent cannot rule out).
struct Counterexample {
  std::string property;
  Deal deal;
  Run run;
  std::optional<Card> card;
  std::optional<Agent> agent;
  std::optional<Deal> other;
  std::string detail;
};

inline nlohmann::json to_json(const Counterexample& c) {
  nlohmann::json j{{"property", c.property}, {"deal", format_deal(c.deal)}, {"run", to_json(c.run)}};
  if (c.card) j["card"] = *c.card;
  if (c.agent) j["agent"] = *c.agent;
  if (c.other) j["other"] = format_deal(*c.other);
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

/// Verdicts per property. A property is recorded as holding until a
/// counterexample is added for it; "unknown" marks a property the chosen
/// mode could not decide.
struct VerificationReport {
  std::string protocol;
  std::vector<std::size_t> sizes;
  std::map<std::string, bool> verdicts;
  std::map<std::string, std::string> unknown;
  std::vector<Counterexample> counterexamples;
  std::size_t deals_checked = 0;
  std::size_t runs_checked = 0;
  std::string coverage = "full";
  std::string ignorance_mode = "exhaustive";
  std::optional<std::uint64_t> seed;
  std::size_t max_counterexamples = 16;

  void require(const std::string& property) { verdicts.emplace(property, true); }

  void fail(Counterexample c) {
    verdicts[c.property] = false;
    if (counterexamples.size() < max_counterexamples) counterexamples.push_back(std::move(c));
  }

  void undecided(const std::string& property, const std::string& why) {
    if (!verdicts.count(property) || verdicts[property]) unknown[property] = why;
  }

  /// True when the property was checked, has no counterexample and was
  /// decided.
  bool holds(const std::string& property) const {
    const auto it = verdicts.find(property);
    return it != verdicts.end() && it->second && !unknown.count(property);
  }

  bool all_hold() const {
    for (const auto& [name, ok] : verdicts) {
      if (!ok || unknown.count(name)) return false;
    }
    return true;
  }

  void merge(const VerificationReport& other) {
    for (const auto& [name, ok] : other.verdicts) {
      auto [it, inserted] = verdicts.emplace(name, ok);
      if (!inserted) it->second = it->second && ok;
    }
    for (const auto& [name, why] : other.unknown) unknown.emplace(name, why);
    for (const auto& c : other.counterexamples) {
      if (counterexamples.size() < max_counterexamples) counterexamples.push_back(c);
    }
    deals_checked += other.deals_checked;
    runs_checked += other.runs_checked;
    if (other.coverage != "full") coverage = other.coverage;
    if (other.ignorance_mode != ignorance_mode) ignorance_mode = "mixed";
  }
};

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json verdicts = nlohmann::json::object();
  for (const auto& [name, ok] : r.verdicts) verdicts[name] = r.unknown.count(name) ? "unknown" : (ok ? "pass" : "fail");
  nlohmann::json j{{"protocol", r.protocol},
                   {"sizes", r.sizes},
                   {"verdicts", verdicts},
                   {"all_hold", r.all_hold()},
                   {"deals_checked", r.deals_checked},
                   {"runs_checked", r.runs_checked},
                   {"coverage", r.coverage},
                   {"ignorance_mode", r.ignorance_mode},
                   {"counterexamples", nlohmann::json::array()}};
  if (!r.unknown.empty()) j["unknown"] = r.unknown;
  if (r.seed) j["seed"] = *r.seed;
  for (const auto& c : r.counterexamples) j["counterexamples"].push_back(to_json(c));
  return j;
}

}  // namespace sadi
