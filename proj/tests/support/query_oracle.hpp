#pragma once

// Naive-scan answers to the town/road queries, computed from the raw
// fixture coordinates with the oracle geometry.

#include "generators.hpp"
#include "oracles.hpp"

#include "landcore/query.hpp"

#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Names = std::vector<std::string>;
using Pairs = std::vector<std::pair<std::string, std::string>>;

inline Names area_gt(const gen::DatasetSpec& ds, double threshold) {
  Names out;
  for (const auto& t : ds.towns)
    if (polygon_area(t.rings) > threshold) out.push_back(t.name);
  return out;
}

inline Names bbox_overlapping(const gen::DatasetSpec& ds, Bounds w) {
  Names out;
  for (const auto& t : ds.towns) {
    const Bounds b = bounds_of(t.rings.front());
    if (b.x0 <= w.x1 && w.x0 <= b.x1 && b.y0 <= w.y1 && w.y0 <= b.y1) out.push_back(t.name);
  }
  return out;
}

inline Names roads_short_recent(const gen::DatasetSpec& ds, double max_len, const std::string& after) {
  Names out;
  for (const auto& r : ds.roads) {
    double len = 0;
    for (std::size_t i = 0; i + 1 < r.points.size(); ++i)
      len += std::hypot(r.points[i + 1].x - r.points[i].x, r.points[i + 1].y - r.points[i].y);
    if (len < max_len && r.construct > after) out.push_back(r.name);
  }
  return out;
}

inline bool near(const gen::TownSpec& t, const gen::RoadSpec& r, double dist) {
  if (bounds_gap(bounds_of(t.rings.front()), bounds_of(r.points)) >= dist) return false;
  return polygon_polyline_distance(t.rings, r.points) < dist;
}

inline Names near_road(const gen::DatasetSpec& ds, double dist, const std::string& road) {
  Names out;
  for (const auto& r : ds.roads)
    if (r.name == road)
      for (const auto& t : ds.towns)
        if (near(t, r, dist)) out.push_back(t.name);
  return out;
}

inline Pairs near_any(const gen::DatasetSpec& ds, double dist) {
  Pairs out;
  for (const auto& t : ds.towns)
    for (const auto& r : ds.roads)
      if (near(t, r, dist)) out.emplace_back(t.name, r.name);
  return out;
}

template <class Rows>
Names names(const Rows& rows) {
  Names out;
  for (const auto* row : rows) out.push_back(row->name);
  return out;
}

inline Pairs names(const landcore::TownRoadRows& rows) {
  Pairs out;
  for (const auto& [t, r] : rows) out.emplace_back(t->name, r->name);
  return out;
}

} // namespace oracle
