#include "landcore/query.hpp"

#include "landcore/error.hpp"

#include <charconv>
#include <cstdio>
#include <set>

namespace landcore {

Date::Date(std::chrono::year_month_day ymd) : ymd_(ymd) {
  if (!ymd_.ok()) throw ValidationError("invalid calendar date");
}

Date Date::parse(std::string_view iso) {
  auto fail = [&]() -> Date {
    throw ValidationError("date '" + std::string(iso) + "' is not ISO-8601 (YYYY-MM-DD)");
  };
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return fail();
  auto field = [&](std::size_t pos, std::size_t len, int& out) {
    const char* first = iso.data() + pos;
    const char* last = first + len;
    for (const char* c = first; c != last; ++c)
      if (*c < '0' || *c > '9') return false;
    return std::from_chars(first, last, out).ec == std::errc{};
  };
  int y = 0, m = 0, d = 0;
  if (!field(0, 4, y) || !field(5, 2, m) || !field(8, 2, d)) return fail();
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return fail();
  return Date(ymd);
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd_.year()),
                static_cast<unsigned>(ymd_.month()), static_cast<unsigned>(ymd_.day()));
  return buf;
}

std::string_view trim(std::string_view s) noexcept {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

Dataset::Dataset(std::vector<Town> towns, std::vector<Road> roads)
    : towns_(std::move(towns)), roads_(std::move(roads)) {
  std::set<std::string_view> names;
  for (const Town& t : towns_)
    if (!names.insert(trim(t.name)).second)
      throw ValidationError("duplicate town name '" + t.name + "'");
  names.clear();
  for (const Road& r : roads_)
    if (!names.insert(trim(r.name)).second)
      throw ValidationError("duplicate road name '" + r.name + "'");
}

void Dataset::build_index() {
  std::vector<Box2> town_boxes;
  town_boxes.reserve(towns_.size());
  for (const Town& t : towns_) town_boxes.push_back(bbox(t.region));
  std::vector<Box2> road_boxes;
  road_boxes.reserve(roads_.size());
  for (const Road& r : roads_) road_boxes.push_back(bbox(r.shape));
  town_index_.emplace(std::move(town_boxes));
  road_index_.emplace(std::move(road_boxes));
}

std::optional<std::size_t> Dataset::find_road(std::string_view name) const {
  const std::string_view key = trim(name);
  for (std::size_t i = 0; i < roads_.size(); ++i)
    if (trim(roads_[i].name) == key) return i;
  return std::nullopt;
}

namespace {

// Prefilter reach for a distance join; the slack absorbs rounding in the
// inflated box so the prefilter never drops a true match.
double reach_margin(double dist) { return dist + kSnapTolerance * (1.0 + dist); }

bool use_index(const Dataset& ds, QueryMode mode) {
  return mode == QueryMode::indexed && ds.has_index();
}

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw ValidationError(std::string(what) + " must be >= 0");
}

} // namespace

TownRows towns_area_gt(const Dataset& ds, double threshold, QueryMode) {
  require_nonnegative(threshold, "area threshold");
  TownRows rows;
  for (const Town& t : ds.towns())
    if (area(t.region) > threshold) rows.push_back(&t);
  return rows;
}

TownRows towns_bbox_overlapping(const Dataset& ds, const Box2& window, QueryMode mode) {
  TownRows rows;
  if (use_index(ds, mode)) {
    for (std::size_t id : ds.town_index()->query(window)) rows.push_back(&ds.towns()[id]);
    return rows;
  }
  for (const Town& t : ds.towns())
    if (boxes_overlap(bbox(t.region), window)) rows.push_back(&t);
  return rows;
}

RoadRows roads_short_recent(const Dataset& ds, double max_len, const Date& after, QueryMode) {
  require_nonnegative(max_len, "length threshold");
  RoadRows rows;
  for (const Road& r : ds.roads())
    if (length(r.shape) < max_len && r.construct > after) rows.push_back(&r);
  return rows;
}

TownRows towns_near_road(const Dataset& ds, double dist, std::string_view road_name,
                         QueryMode mode) {
  require_nonnegative(dist, "distance");
  const auto road_id = ds.find_road(road_name);
  if (!road_id) throw NotFoundError("no road named '" + std::string(trim(road_name)) + "'");
  const Road& road = ds.roads()[*road_id];
  TownRows rows;
  if (use_index(ds, mode)) {
    // Anything closer than dist has a bbox within dist of the road's bbox.
    const Box2 reach = ds.road_index()->box(*road_id).inflated(reach_margin(dist));
    for (std::size_t id : ds.town_index()->query(reach)) {
      const Town& t = ds.towns()[id];
      if (min_dist_polygon_polyline(t.region, road.shape) < dist) rows.push_back(&t);
    }
    return rows;
  }
  for (const Town& t : ds.towns())
    if (min_dist_polygon_polyline(t.region, road.shape) < dist) rows.push_back(&t);
  return rows;
}

TownRoadRows towns_near_any_road(const Dataset& ds, double dist, QueryMode mode) {
  require_nonnegative(dist, "distance");
  TownRoadRows rows;
  if (use_index(ds, mode)) {
    for (std::size_t ti = 0; ti < ds.towns().size(); ++ti) {
      const Town& t = ds.towns()[ti];
      const Box2 reach = ds.town_index()->box(ti).inflated(reach_margin(dist));
      for (std::size_t ri : ds.road_index()->query(reach)) {
        const Road& r = ds.roads()[ri];
        if (min_dist_polygon_polyline(t.region, r.shape) < dist) rows.emplace_back(&t, &r);
      }
    }
    return rows;
  }
  for (const Town& t : ds.towns())
    for (const Road& r : ds.roads())
      if (min_dist_polygon_polyline(t.region, r.shape) < dist) rows.emplace_back(&t, &r);
  return rows;
}

} // namespace landcore
