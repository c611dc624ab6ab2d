#pragma once

// Relational-spatial dataset of towns and roads and the canonical queries
// over it. Each query runs either as a naive scan or through a bounding-box
// index prefilter; both produce identical rows in identical order.

#include "landcore/geometry.hpp"
#include "landcore/spatial_index.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace landcore {

// Calendar date; ingestion accepts ISO-8601 (YYYY-MM-DD) only.
class Date {
public:
  Date() = default;
  explicit Date(std::chrono::year_month_day ymd);

  // Throws ValidationError for anything other than a valid YYYY-MM-DD.
  static Date parse(std::string_view iso);
  std::string to_string() const;

  std::chrono::year_month_day ymd() const noexcept { return ymd_; }

  friend auto operator<=>(const Date&, const Date&) = default;

private:
  std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::month{1},
                                   std::chrono::day{1}};
};

struct Town {
  std::string name;
  std::uint64_t population = 0;
  Polygon2 region;
};

struct Road {
  std::string name;
  Date construct;
  Polyline2 shape;
};

enum class QueryMode { naive, indexed };

class Dataset {
public:
  // Throws ValidationError on duplicate town or road names.
  Dataset(std::vector<Town> towns, std::vector<Road> roads);

  std::span<const Town> towns() const noexcept { return towns_; }
  std::span<const Road> roads() const noexcept { return roads_; }

  void build_index();
  bool has_index() const noexcept { return town_index_.has_value(); }
  const BoxIndex* town_index() const noexcept { return town_index_ ? &*town_index_ : nullptr; }
  const BoxIndex* road_index() const noexcept { return road_index_ ? &*road_index_ : nullptr; }

  // Row id of the road whose trimmed name equals the trimmed `name`.
  std::optional<std::size_t> find_road(std::string_view name) const;

private:
  std::vector<Town> towns_;
  std::vector<Road> roads_;
  std::optional<BoxIndex> town_index_;
  std::optional<BoxIndex> road_index_;
};

using TownRows = std::vector<const Town*>;
using RoadRows = std::vector<const Road*>;
using TownRoadRows = std::vector<std::pair<const Town*, const Road*>>;

std::string_view trim(std::string_view s) noexcept;

// area(region) > threshold.
TownRows towns_area_gt(const Dataset& ds, double threshold, QueryMode mode = QueryMode::indexed);

// bbox(region) overlaps window.
TownRows towns_bbox_overlapping(const Dataset& ds, const Box2& window,
                                QueryMode mode = QueryMode::indexed);

// length(shape) < max_len and construct > after.
RoadRows roads_short_recent(const Dataset& ds, double max_len, const Date& after,
                            QueryMode mode = QueryMode::indexed);

// min_dist(region, road.shape) < dist for the named road; throws
// NotFoundError when no road has that name.
TownRows towns_near_road(const Dataset& ds, double dist, std::string_view road_name,
                         QueryMode mode = QueryMode::indexed);

// Every (town, road) pair closer than dist, town-major.
TownRoadRows towns_near_any_road(const Dataset& ds, double dist,
                                 QueryMode mode = QueryMode::indexed);

} // namespace landcore
