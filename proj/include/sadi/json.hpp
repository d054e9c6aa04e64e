#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "sadi/announcement.hpp"
#include "sadi/protocol.hpp"

namespace sadi {

inline nlohmann::json to_json(const Announcement& a) {
  nlohmann::json j{{"kind", kind_name(a.kind())}};
  switch (a.kind()) {
    case AnnouncementKind::kPass:
    case AnnouncementKind::kEnd:
      break;
    case AnnouncementKind::kCountsIn:
      j["agent"] = a.agent();
      j["cards"] = format_cards(a.cards());
      j["count"] = a.count();
      break;
    case AnnouncementKind::kHandsIn:
      j["agent"] = a.agent();
      j["hands"] = nlohmann::json::array();
      for (const auto& h : a.hands()) j["hands"].push_back(format_cards(h));
      break;
    case AnnouncementKind::kDealSet:
      j["deals"] = nlohmann::json::array();
      for (const auto& d : a.deals()) j["deals"].push_back(format_deal(d));
      break;
    case AnnouncementKind::kRestricted:
      j["cards"] = format_cards(a.cards());
      j["inner"] = to_json(a.inner());
      break;
  }
  return j;
}

/// Inverse of to_json. Count announcements are read back as written, since
/// traces store them in canonical form.
inline Announcement announcement_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "pass") return Announcement::pass();
    if (kind == "end") return Announcement::end();
    if (kind == "counts_in") {
      return Announcement::counts_in_canonical(j.at("agent").get<Agent>(), parse_cards(j.at("cards").get<std::string>()),
                                               j.at("count").get<std::size_t>());
    }
    if (kind == "hands_in") {
      std::vector<CardSet> hands;
      for (const auto& h : j.at("hands")) hands.push_back(parse_cards(h.get<std::string>()));
      return Announcement::hands_in(j.at("agent").get<Agent>(), std::move(hands));
    }
    if (kind == "deal_set") {
      std::vector<Deal> deals;
      for (const auto& d : j.at("deals")) deals.push_back(parse_deal(d.get<std::string>()));
      return Announcement::deal_set(std::move(deals));
    }
    if (kind == "restricted") {
      return Announcement::restricted(parse_cards(j.at("cards").get<std::string>()),
                                      announcement_from_json(j.at("inner")));
    }
    throw InvalidArgument("unknown announcement kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("announcement: ") + e.what());
  }
}

inline nlohmann::json to_json(const Run& run) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& a : run) j.push_back(to_json(a));
  return j;
}

inline Run run_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidArgument("run: expected an array");
  Run run;
  for (const auto& a : j) run.push_back(announcement_from_json(a));
  return run;
}

}  // namespace sadi
