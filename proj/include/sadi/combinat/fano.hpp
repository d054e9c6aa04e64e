#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sadi/cards.hpp"
#include "sadi/errors.hpp"
#include "sadi/rng.hpp"

namespace sadi {

/// Point -> line with the point not on its line.
using FanoBijection = std::map<Card, CardSet>;

/// The seven lines of the plane on points {0, ..., 6}.
inline std::vector<CardSet> fano_lines() {
  return {CardSet{0, 1, 2}, CardSet{0, 3, 4}, CardSet{0, 5, 6}, CardSet{1, 3, 5},
          CardSet{1, 4, 6}, CardSet{2, 3, 6}, CardSet{2, 4, 5}};
}

/// Seven 3-subsets of a 7-point set such that every two points lie on
/// exactly one of them.
inline bool is_fano_plane(const std::vector<CardSet>& lines) {
  if (lines.size() != 7) return false;
  CardSet points;
  for (const auto& l : lines) {
    if (l.size() != 3) return false;
    points = points | l;
  }
  if (points.size() != 7) return false;
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = i + 1; j < 7; ++j) {
      std::size_t on = 0;
      for (const auto& l : lines) on += l.contains(points[i]) && l.contains(points[j]);
      if (on != 1) return false;
    }
  }
  return true;
}

namespace detail {

inline bool extend_bijection(const std::vector<Card>& points, std::size_t next, const std::vector<CardSet>& lines,
                             std::vector<bool>& used, FanoBijection& out,
                             const std::function<bool(const FanoBijection&)>& visit) {
  if (next == points.size()) return visit(out);
  const Card x = points[next];
  if (out.count(x)) return extend_bijection(points, next + 1, lines, used, out, visit);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (used[l] || lines[l].contains(x)) continue;
    used[l] = true;
    out[x] = lines[l];
    const bool go_on = extend_bijection(points, next + 1, lines, used, out, visit);
    out.erase(x);
    used[l] = false;
    if (!go_on) return false;
  }
  return true;
}

inline void check_pin(const std::vector<CardSet>& lines, Card pin_point, const CardSet& pin_line) {
  if (std::find(lines.begin(), lines.end(), pin_line) == lines.end()) {
    throw InvalidArgument("fano bijection: pinned set is not a line");
  }
  if (pin_line.contains(pin_point)) throw InvalidArgument("fano bijection: pinned point lies on the pinned line");
}

}  // namespace detail

/// Every bijection l from the points of `lines` to `lines` with x not on
/// l(x) and l(pin_point) = pin_line, in backtracking order.
inline std::vector<FanoBijection> all_fano_bijections(const std::vector<CardSet>& lines, Card pin_point,
                                                      const CardSet& pin_line) {
  detail::check_pin(lines, pin_point, pin_line);
  CardSet points;
  for (const auto& l : lines) points = points | l;
  std::vector<bool> used(lines.size(), false);
  used[static_cast<std::size_t>(std::find(lines.begin(), lines.end(), pin_line) - lines.begin())] = true;
  FanoBijection current{{pin_point, pin_line}};
  std::vector<FanoBijection> out;
  detail::extend_bijection(points.cards(), 0, lines, used, current, [&](const FanoBijection& b) {
    out.push_back(b);
    return true;
  });
  return out;
}

/// The first bijection found by backtracking over points in increasing order
/// and lines in listed order.
inline FanoBijection fano_bijection(const std::vector<CardSet>& lines, Card pin_point, const CardSet& pin_line) {
  detail::check_pin(lines, pin_point, pin_line);
  CardSet points;
  for (const auto& l : lines) points = points | l;
  std::vector<bool> used(lines.size(), false);
  used[static_cast<std::size_t>(std::find(lines.begin(), lines.end(), pin_line) - lines.begin())] = true;
  FanoBijection current{{pin_point, pin_line}};
  std::optional<FanoBijection> found;
  detail::extend_bijection(points.cards(), 0, lines, used, current, [&](const FanoBijection& b) {
    found = b;
    return false;
  });
  if (!found) throw ProtocolDefect("fano_bijection: no bijection completes the pin");
  return *found;
}

inline FanoBijection fano_bijection(Card pin_point, const CardSet& pin_line) {
  return fano_bijection(fano_lines(), pin_point, pin_line);
}

inline bool is_fano_bijection(const std::vector<CardSet>& lines, const FanoBijection& b) {
  std::set<CardSet> image;
  CardSet points;
  for (const auto& l : lines) points = points | l;
  if (b.size() != points.size()) return false;
  for (const auto& [x, l] : b) {
    if (!points.contains(x) || l.contains(x)) return false;
    if (std::find(lines.begin(), lines.end(), l) == lines.end()) return false;
    image.insert(l);
  }
  return image.size() == lines.size();
}

/// All 30 planes on the given seven points, each as its sorted line list,
/// in a fixed order.
inline std::vector<std::vector<CardSet>> all_fano_planes(const CardSet& points) {
  if (points.size() != 7) throw InvalidArgument("all_fano_planes: need exactly seven points");
  std::vector<Card> perm = points.cards();
  std::set<std::vector<CardSet>> planes;
  do {
    std::vector<CardSet> lines;
    for (const auto& l : fano_lines()) {
      lines.push_back(CardSet{perm[static_cast<std::size_t>(l[0])], perm[static_cast<std::size_t>(l[1])],
                              perm[static_cast<std::size_t>(l[2])]});
    }
    std::sort(lines.begin(), lines.end());
    planes.insert(std::move(lines));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {planes.begin(), planes.end()};
}

/// A uniformly random plane on `points` having `line` as one of its lines.
inline std::vector<CardSet> random_fano_plane_through(const CardSet& points, const CardSet& line, Rng& rng) {
  if (line.size() != 3 || !line.is_subset_of(points)) throw InvalidArgument("fano plane: line must be 3 of the points");
  std::vector<std::vector<CardSet>> through;
  for (auto& plane : all_fano_planes(points)) {
    if (std::find(plane.begin(), plane.end(), line) != plane.end()) through.push_back(std::move(plane));
  }
  return rng.pick(through);
}

}  // namespace sadi
