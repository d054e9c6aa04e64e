#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sadi/combinat/diffusion.hpp"
#include "sadi/verifier/ignorance.hpp"
#include "sadi/verifier/report.hpp"

namespace sadi {

/// Which properties to check. Agents holding no cards are exempt from the
/// informativity and strong-safety clauses: they have nothing to learn and
/// can never be shown to hold a card.
struct PropertySet {
  bool weakly_informative = false;
  bool informative = false;
  bool deal_safe = false;
  bool safe = false;
  bool strongly_safe = false;
  std::vector<Agent> safe_for;
  std::optional<std::size_t> k;

  /// Comma-separated names: WI, I, DS, S, SS, S_P<agent> (e.g. S_P0), k=<n>.
  static PropertySet parse(const std::string& csv) {
    PropertySet p;
    std::stringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty()) continue;
      if (item == "WI") {
        p.weakly_informative = true;
      } else if (item == "I") {
        p.informative = true;
      } else if (item == "DS") {
        p.deal_safe = true;
      } else if (item == "S") {
        p.safe = true;
      } else if (item == "SS") {
        p.strongly_safe = true;
      } else if (item.rfind("S_P", 0) == 0 && item.size() > 3) {
        p.safe_for.push_back(parse_number(item.substr(3), item));
      } else if (item.rfind("k=", 0) == 0) {
        p.k = parse_number(item.substr(2), item);
      } else {
        throw InvalidArgument("unknown property '" + item + "'");
      }
    }
    return p;
  }

 private:
  static std::size_t parse_number(const std::string& s, const std::string& item) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw InvalidArgument("bad property '" + item + "'");
    return v;
  }
};

inline std::string safe_for_name(Agent p) { return "S_P" + std::to_string(p); }

/// Checks the requested properties on one terminal run whose ignorance set
/// is `ig`. Every member of `ig` is an execution with this run, so each is
/// checked as the actual deal.
inline void check_terminal_run(const DistributionType& type, const Run& run, const IgnoranceSet& ig,
                               const PropertySet& props, VerificationReport& report) {
  const auto& deals = ig.deals;
  const std::size_t n = deals.size();
  const auto holders = type.holders();
  const auto cards = type.deck().cards();
  ++report.runs_checked;
  if (n == 0) return;

  auto cx = [&](std::string property, const Deal& d) {
    Counterexample c;
    c.property = std::move(property);
    c.deal = d;
    c.run = run;
    return c;
  };

  if (props.informative || props.weakly_informative) {
    if (props.informative) report.require("I");
    if (props.weakly_informative) report.require("WI");
    if (!ig.exact) {
      if (props.informative) report.undecided("I", "ignorance set is a certified subset only");
      if (props.weakly_informative) report.undecided("WI", "ignorance set is a certified subset only");
    } else {
      std::vector<std::map<CardSet, std::vector<std::size_t>>> by_hand(type.agents());
      for (std::size_t i = 0; i < n; ++i) {
        for (Agent p : holders) by_hand[p][deals[i].hand(p)].push_back(i);
      }
      for (std::size_t i = 0; i < n; ++i) {
        bool someone = false;
        for (Agent p : holders) {
          const auto& same = by_hand[p][deals[i].hand(p)];
          if (same.size() == 1) {
            someone = true;
          } else if (props.informative) {
            auto c = cx("I", deals[i]);
            c.agent = p;
            c.other = deals[same[0] == i ? same[1] : same[0]];
            c.detail = "agent cannot tell the deal from another execution with the same run";
            report.fail(std::move(c));
          }
        }
        if (props.weakly_informative && !someone) {
          auto c = cx("WI", deals[i]);
          c.detail = "no agent learns the deal";
          report.fail(std::move(c));
        }
      }
    }
  }

  const bool any_safety = props.deal_safe || props.safe || props.strongly_safe || !props.safe_for.empty();
  if (any_safety) {
    // holds[c][p]: number of deals in the ignorance set giving card c to p.
    std::map<Card, std::vector<std::size_t>> holds;
    for (Card c : cards) holds[c].assign(type.agents(), 0);
    for (const Deal& d : deals) {
      for (Agent p : holders) {
        for (Card c : d.hand(p)) ++holds[c][p];
      }
    }
    // Positive safety facts survive a smaller ignorance set; failures do not.
    auto fail_or_unknown = [&](Counterexample c) {
      if (ig.exact) {
        report.fail(std::move(c));
      } else {
        report.undecided(c.property, "ignorance set is a certified subset only");
      }
    };
    if (props.deal_safe) report.require("DS");
    if (props.safe) report.require("S");
    for (Agent p : props.safe_for) report.require(safe_for_name(p));
    for (const Deal& d : deals) {
      bool some_safe = false;
      for (Agent p : holders) {
        for (Card c : d.hand(p)) {
          const bool safe = holds[c][p] < n;
          some_safe = some_safe || safe;
          if (safe) continue;
          auto e = cx("S", d);
          e.card = c;
          e.agent = p;
          e.detail = "every execution with this run gives the card to the agent";
          if (props.safe) fail_or_unknown(e);
          if (std::find(props.safe_for.begin(), props.safe_for.end(), p) != props.safe_for.end()) {
            e.property = safe_for_name(p);
            fail_or_unknown(e);
          }
        }
      }
      if (props.deal_safe && !some_safe) {
        auto e = cx("DS", d);
        e.detail = "the run reveals the whole deal";
        fail_or_unknown(e);
      }
    }
    if (props.strongly_safe) {
      report.require("SS");
      for (Card c : cards) {
        for (Agent p : holders) {
          const std::size_t h = holds[c][p];
          if (h > 0 && h < n) continue;
          auto e = cx("SS", deals.front());
          e.card = c;
          e.agent = p;
          e.detail = h == 0 ? "no execution with this run gives the card to the agent"
                            : "every execution with this run gives the card to the agent";
          fail_or_unknown(std::move(e));
        }
      }
    }
  }

  if (props.k) {
    const std::string name = "k-diffusion";
    report.require(name);
    if (!ig.exact) {
      report.undecided(name, "ignorance set is a certified subset only");
    } else if (!is_k_diffusion(deals, *props.k)) {
      auto c = cx(name, deals.front());
      c.detail = "ignorance set has " + std::to_string(n) + " deals and is " +
                 (is_diffusion(deals) ? "a diffusion" : "not a diffusion") + "; expected a " +
                 std::to_string(*props.k) + "-diffusion";
      report.fail(std::move(c));
    }
  }
}

}  // namespace sadi
