#pragma once

// JSON dataset format.
//
//   {
//     "schema_version": "1.0",
//     "crs": "local-meters",
//     "extent": [x0, y0, x1, y1],            optional
//     "towns":        [feature, ...],        polygon; name, population
//     "roads":        [feature, ...],        polyline; name, construct (YYYY-MM-DD)
//     "regions":      [feature, ...],        polygon; a_id
//     "fields":       [feature, ...],        polygon; pivot_irrigation, small_scale
//     "cost_regions": [feature, ...]         polygon; weight (number or "inf")
//   }
//
// feature = {"id": "...", "properties": {...},
//            "geometry": {"type": "polygon"|"polyline", "coordinates": ...}}
// Polygon coordinates are the outer ring followed by island rings, each a
// list of [x, y] pairs; polyline coordinates are one such list.

#include "landcore/ccm.hpp"
#include "landcore/query.hpp"
#include "landcore/stratification.hpp"
#include "landcore/topology.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace landcore {

inline constexpr std::string_view kSchemaVersion = "1.0";
inline constexpr std::string_view kCrs = "local-meters";

struct Geometry {
  enum class Type { polygon, polyline };
  Type type = Type::polygon;
  // Polygons: outer ring then islands. Polylines: exactly one entry.
  std::vector<std::vector<Point2>> parts;

  friend bool operator==(const Geometry&, const Geometry&) = default;
};

struct Feature {
  std::string id;
  nlohmann::json properties = nlohmann::json::object();
  Geometry geometry;

  friend bool operator==(const Feature&, const Feature&) = default;
};

struct GeoDocument {
  std::string schema_version{kSchemaVersion};
  std::string crs{kCrs};
  std::optional<Box2> extent;
  std::vector<Feature> towns;
  std::vector<Feature> roads;
  std::vector<Feature> regions;
  std::vector<Feature> fields;
  std::vector<Feature> cost_regions;

  friend bool operator==(const GeoDocument&, const GeoDocument&) = default;
};

// Throws ParseError carrying the line and column of malformed JSON.
nlohmann::json parse_json(std::string_view text);

// Throws ParseError with line and column for malformed JSON and
// ValidationError naming the feature id for invalid content.
GeoDocument parse_document(std::string_view text);
// As parse_document; IoError when the file cannot be read.
GeoDocument load_document(const std::string& path);
std::string serialize_document(const GeoDocument& doc);

Polygon2 to_polygon(const Feature& f);
Polyline2 to_polyline(const Feature& f);

// Declared extent, or the bbox of every geometry in the document.
Box2 document_extent(const GeoDocument& doc);

Dataset to_dataset(const GeoDocument& doc);
std::vector<AreaInput> to_areas(const GeoDocument& doc);
FieldMap to_field_map(const GeoDocument& doc, double block_size);
CostMap to_cost_map(const GeoDocument& doc, double default_weight = 1.0);

// Topology store as three arrays: edges, areas and the catalog row.
std::string serialize_store(const TopologyStore& store);
TopologyStore parse_store(std::string_view text);

} // namespace landcore
