#include "landcore/document.hpp"

#include "landcore/csv.hpp"
#include "landcore/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace landcore {

using nlohmann::json;

namespace {

constexpr const char* kCategories[] = {"towns", "roads", "regions", "fields", "cost_regions"};

} // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 1 : e.byte, text.size() + 1);
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (const auto colon = what.rfind(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw ParseError(what, line, column);
  }
}

namespace {

double number(const json& j, std::string_view what) {
  if (!j.is_number()) throw ValidationError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(std::string(what) + " must be finite");
  return v;
}

Point2 point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ValidationError("a coordinate must be an [x, y] pair");
  return {number(j[0], "coordinate"), number(j[1], "coordinate")};
}

std::vector<Point2> points_from(const json& j) {
  if (!j.is_array()) throw ValidationError("coordinates must be a list of [x, y] pairs");
  std::vector<Point2> out;
  out.reserve(j.size());
  for (const json& p : j) out.push_back(point_from(p));
  return out;
}

Box2 box_from(const json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 4)
    throw ValidationError(std::string(what) + " must be [x0, y0, x1, y1]");
  const Point2 lo{number(j[0], what), number(j[1], what)};
  const Point2 hi{number(j[2], what), number(j[3], what)};
  if (lo.x > hi.x || lo.y > hi.y) throw ValidationError(std::string(what) + " has min > max");
  return Box2(lo, hi);
}

json box_json(const Box2& b) { return json::array({b.min.x, b.min.y, b.max.x, b.max.y}); }

json points_json(std::span<const Point2> pts) {
  json out = json::array();
  for (const Point2& p : pts) out.push_back(json::array({p.x, p.y}));
  return out;
}

Geometry geometry_from(const json& j) {
  if (!j.is_object()) throw ValidationError("geometry must be an object");
  const auto type = j.find("type");
  const auto coords = j.find("coordinates");
  if (type == j.end() || !type->is_string()) throw ValidationError("geometry needs a string type");
  if (coords == j.end()) throw ValidationError("geometry needs coordinates");
  Geometry g;
  const std::string t = type->get<std::string>();
  if (t == "polygon") {
    g.type = Geometry::Type::polygon;
    if (!coords->is_array() || coords->empty())
      throw ValidationError("polygon coordinates must be a list of rings");
    for (const json& ring : *coords) g.parts.push_back(points_from(ring));
  } else if (t == "polyline") {
    g.type = Geometry::Type::polyline;
    g.parts.push_back(points_from(*coords));
  } else {
    throw ValidationError("unknown geometry type '" + t + "'");
  }
  return g;
}

const json* property(const Feature& f, const char* key) {
  const auto it = f.properties.find(key);
  return it == f.properties.end() ? nullptr : &*it;
}

std::string string_property(const Feature& f, const char* key) {
  const json* v = property(f, key);
  if (!v || !v->is_string()) throw ValidationError(std::string("property '") + key + "' must be a string");
  return v->get<std::string>();
}

long long integer_property(const Feature& f, const char* key) {
  const json* v = property(f, key);
  if (!v || !v->is_number_integer())
    throw ValidationError(std::string("property '") + key + "' must be an integer");
  return v->get<long long>();
}

bool flag_property(const Feature& f, const char* key) {
  const json* v = property(f, key);
  if (!v) return false;
  if (!v->is_boolean()) throw ValidationError(std::string("property '") + key + "' must be true or false");
  return v->get<bool>();
}

double weight_property(const Feature& f) {
  const json* v = property(f, "weight");
  if (!v) throw ValidationError("property 'weight' is required");
  if (v->is_string() && v->get<std::string>() == "inf") return kInfiniteWeight;
  if (!v->is_number()) throw ValidationError("property 'weight' must be a number or \"inf\"");
  const double w = v->get<double>();
  if (!(w > 0.0)) throw ValidationError("property 'weight' must be > 0");
  return w;
}

void require_type(const Feature& f, Geometry::Type type) {
  if (f.geometry.type != type)
    throw ValidationError(type == Geometry::Type::polygon ? "geometry must be a polygon"
                                                          : "geometry must be a polyline");
}

// Checks the geometry and the category's required properties.
void validate_feature(const Feature& f, std::string_view category) {
  if (category == "roads") {
    require_type(f, Geometry::Type::polyline);
    (void)to_polyline(f);
    if (trim(string_property(f, "name")).empty()) throw ValidationError("road name is empty");
    (void)Date::parse(string_property(f, "construct"));
    return;
  }
  require_type(f, Geometry::Type::polygon);
  (void)to_polygon(f);
  if (category == "towns") {
    if (trim(string_property(f, "name")).empty()) throw ValidationError("town name is empty");
    if (integer_property(f, "population") < 0) throw ValidationError("population must be >= 0");
  } else if (category == "regions") {
    if (integer_property(f, "a_id") <= 0) throw ValidationError("a_id must be positive");
  } else if (category == "fields") {
    (void)flag_property(f, "pivot_irrigation");
    (void)flag_property(f, "small_scale");
  } else if (category == "cost_regions") {
    (void)weight_property(f);
    if (const json* m = property(f, "multiplier"); m && !(m->is_number() && m->get<double>() > 0.0))
      throw ValidationError("property 'multiplier' must be a number > 0");
  }
}

std::vector<Feature>& category_of(GeoDocument& doc, std::string_view name) {
  if (name == "towns") return doc.towns;
  if (name == "roads") return doc.roads;
  if (name == "regions") return doc.regions;
  if (name == "fields") return doc.fields;
  return doc.cost_regions;
}

const std::vector<Feature>& category_of(const GeoDocument& doc, std::string_view name) {
  return category_of(const_cast<GeoDocument&>(doc), name);
}

json feature_json(const Feature& f) {
  json coords;
  if (f.geometry.type == Geometry::Type::polygon) {
    coords = json::array();
    for (const auto& ring : f.geometry.parts) coords.push_back(points_json(ring));
  } else {
    coords = points_json(f.geometry.parts.front());
  }
  json g = json::object();
  g["type"] = f.geometry.type == Geometry::Type::polygon ? "polygon" : "polyline";
  g["coordinates"] = std::move(coords);
  json out = json::object();
  out["id"] = f.id;
  out["properties"] = f.properties;
  out["geometry"] = std::move(g);
  return out;
}

} // namespace

GeoDocument parse_document(std::string_view text) {
  const json root = parse_json(text);
  if (!root.is_object()) throw ValidationError("document must be a JSON object");
  for (const auto& [key, value] : root.items()) {
    (void)value;
    const bool known = key == "schema_version" || key == "crs" || key == "extent" ||
                       std::find(std::begin(kCategories), std::end(kCategories), key) !=
                           std::end(kCategories);
    if (!known) throw ValidationError("unknown top-level key '" + key + "'");
  }

  GeoDocument doc;
  const auto version = root.find("schema_version");
  if (version == root.end() || !version->is_string())
    throw ValidationError("schema_version is required");
  doc.schema_version = version->get<std::string>();
  if (doc.schema_version != kSchemaVersion)
    throw ValidationError("unknown schema_version '" + doc.schema_version + "'");
  const auto crs = root.find("crs");
  if (crs == root.end() || !crs->is_string() || crs->get<std::string>() != kCrs)
    throw ValidationError("crs must be \"local-meters\"");
  if (const auto extent = root.find("extent"); extent != root.end()) {
    doc.extent = box_from(*extent, "extent");
    if (!(doc.extent->width() > 0.0 && doc.extent->height() > 0.0))
      throw ValidationError("extent is empty");
  }

  std::set<std::string> ids;
  for (const char* category : kCategories) {
    const auto arr = root.find(category);
    if (arr == root.end()) continue;
    if (!arr->is_array()) throw ValidationError(std::string(category) + " must be an array");
    std::vector<Feature>& out = category_of(doc, category);
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const json& item = (*arr)[i];
      std::string label = std::string(category) + "[" + std::to_string(i) + "]";
      try {
        if (!item.is_object()) throw ValidationError("feature must be an object");
        const auto id = item.find("id");
        if (id == item.end() || !id->is_string() || id->get<std::string>().empty())
          throw ValidationError("feature needs a nonempty string id");
        Feature f;
        f.id = id->get<std::string>();
        label = "feature '" + f.id + "'";
        if (!ids.insert(f.id).second) throw ValidationError("duplicate feature id");
        if (const auto props = item.find("properties"); props != item.end()) {
          if (!props->is_object()) throw ValidationError("properties must be an object");
          f.properties = *props;
        }
        const auto geom = item.find("geometry");
        if (geom == item.end()) throw ValidationError("geometry is required");
        f.geometry = geometry_from(*geom);
        validate_feature(f, category);
        out.push_back(std::move(f));
      } catch (const ValidationError& e) {
        throw ValidationError(label + " in " + category + ": " + e.what());
      }
    }
  }
  return doc;
}

GeoDocument load_document(const std::string& path) { return parse_document(read_file(path)); }

std::string serialize_document(const GeoDocument& doc) {
  std::string out = "{\n";
  out += "  \"schema_version\": " + json(doc.schema_version).dump() + ",\n";
  out += "  \"crs\": " + json(doc.crs).dump();
  if (doc.extent) out += ",\n  \"extent\": " + box_json(*doc.extent).dump();
  for (const char* category : kCategories) {
    const std::vector<Feature>& features = category_of(doc, category);
    out += ",\n  \"" + std::string(category) + "\": [";
    for (std::size_t i = 0; i < features.size(); ++i) {
      out += i == 0 ? "\n    " : ",\n    ";
      out += feature_json(features[i]).dump();
    }
    out += features.empty() ? "]" : "\n  ]";
  }
  out += "\n}\n";
  return out;
}

Polygon2 to_polygon(const Feature& f) {
  if (f.geometry.type != Geometry::Type::polygon || f.geometry.parts.empty())
    throw ValidationError("feature '" + f.id + "' is not a polygon");
  std::vector<Ring> islands;
  for (std::size_t i = 1; i < f.geometry.parts.size(); ++i) islands.emplace_back(f.geometry.parts[i]);
  return Polygon2(Ring(f.geometry.parts.front()), std::move(islands));
}

Polyline2 to_polyline(const Feature& f) {
  if (f.geometry.type != Geometry::Type::polyline || f.geometry.parts.size() != 1)
    throw ValidationError("feature '" + f.id + "' is not a polyline");
  return Polyline2(f.geometry.parts.front());
}

Box2 document_extent(const GeoDocument& doc) {
  if (doc.extent) return *doc.extent;
  std::optional<Box2> box;
  for (const char* category : kCategories)
    for (const Feature& f : category_of(doc, category))
      for (const auto& part : f.geometry.parts) {
        const Box2 b = bbox(part);
        if (box) box->expand(b);
        else box = b;
      }
  if (!box || !(box->width() > 0.0 && box->height() > 0.0))
    throw ValidationError("document has no extent and no geometry to derive one from");
  return *box;
}

Dataset to_dataset(const GeoDocument& doc) {
  std::vector<Town> towns;
  for (const Feature& f : doc.towns)
    towns.push_back({string_property(f, "name"),
                     static_cast<std::uint64_t>(integer_property(f, "population")), to_polygon(f)});
  std::vector<Road> roads;
  for (const Feature& f : doc.roads)
    roads.push_back({string_property(f, "name"), Date::parse(string_property(f, "construct")),
                     to_polyline(f)});
  return Dataset(std::move(towns), std::move(roads));
}

std::vector<AreaInput> to_areas(const GeoDocument& doc) {
  std::vector<AreaInput> areas;
  for (const Feature& f : doc.regions) areas.emplace_back(integer_property(f, "a_id"), to_polygon(f));
  return areas;
}

FieldMap to_field_map(const GeoDocument& doc, double block_size) {
  std::vector<Field> fields;
  for (const Feature& f : doc.fields)
    fields.push_back({to_polygon(f), flag_property(f, "pivot_irrigation"), flag_property(f, "small_scale")});
  return FieldMap(std::move(fields), document_extent(doc), block_size);
}

CostMap to_cost_map(const GeoDocument& doc, double default_weight) {
  std::vector<CostRegion> regions;
  for (const Feature& f : doc.cost_regions) {
    double w = weight_property(f);
    if (const json* m = property(f, "multiplier")) w *= m->get<double>();
    regions.push_back({to_polygon(f), w});
  }
  return CostMap(std::move(regions), document_extent(doc), default_weight);
}

std::string serialize_store(const TopologyStore& store) {
  const TopologyCatalog& c = store.catalog();
  json catalog = json::object();
  catalog["ind_relname"] = c.ind_relname;
  catalog["ind_relattr"] = c.ind_relattr;
  catalog["topoltype"] = c.topoltype;
  catalog["ref_count"] = c.ref_count;
  catalog["ref_relname"] = c.ref_relname;
  catalog["ref_relid"] = c.ref_relid;
  catalog["ref_relvis"] = c.ref_relvis;
  catalog["ref_relbbox"] = c.ref_relbbox;

  std::string out = "{\n  \"edges\": [";
  bool first = true;
  for (const auto& [id, e] : store.edges()) {
    json row = json::object();
    row["b_id"] = id;
    row["line"] = points_json(e.line.vertices());
    row["bbox"] = box_json(e.bbox);
    row["abox"] = box_json(e.abox);
    row["left"] = e.left ? json(*e.left) : json(nullptr);
    row["right"] = e.right ? json(*e.right) : json(nullptr);
    out += first ? "\n    " : ",\n    ";
    out += row.dump();
    first = false;
  }
  out += "\n  ],\n  \"areas\": [";
  first = true;
  for (const auto& [id, a] : store.areas()) {
    json row = json::object();
    row["a_id"] = id;
    row["b_ids"] = a.edge_refs;
    row["bbox"] = box_json(a.bbox);
    out += first ? "\n    " : ",\n    ";
    out += row.dump();
    first = false;
  }
  out += "\n  ],\n  \"catalog\": [\n    " + catalog.dump() + "\n  ]\n}\n";
  return out;
}

TopologyStore parse_store(std::string_view text) {
  const json root = parse_json(text);
  const auto array = [&](const char* key) -> const json& {
    if (!root.is_object() || !root.contains(key) || !root[key].is_array())
      throw ValidationError(std::string("store needs a '") + key + "' array");
    return root[key];
  };
  const auto integer = [](const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
      throw ValidationError(std::string("store field '") + key + "' must be an integer");
    return j[key].get<std::int64_t>();
  };
  const auto optional_id = [](const json& j, const char* key) -> std::optional<AreaId> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_number_integer())
      throw ValidationError(std::string("store field '") + key + "' must be an integer or null");
    return j[key].get<AreaId>();
  };

  std::map<EdgeId, Edge> edges;
  for (const json& row : array("edges")) {
    if (!row.is_object()) throw ValidationError("edge rows must be objects");
    const EdgeId id = integer(row, "b_id");
    try {
      Edge e{id, Polyline2(points_from(row.value("line", json()))), box_from(row.value("bbox", json()), "bbox"),
             box_from(row.value("abox", json()), "abox"), optional_id(row, "left"),
             optional_id(row, "right")};
      if (!edges.emplace(id, std::move(e)).second) throw ValidationError("duplicate b_id");
    } catch (const ValidationError& err) {
      throw ValidationError("edge " + std::to_string(id) + ": " + err.what());
    }
  }
  std::map<AreaId, AreaRecord> areas;
  for (const json& row : array("areas")) {
    if (!row.is_object()) throw ValidationError("area rows must be objects");
    const AreaId id = integer(row, "a_id");
    AreaRecord a;
    a.a_id = id;
    if (!row.contains("b_ids") || !row["b_ids"].is_array())
      throw ValidationError("area " + std::to_string(id) + ": b_ids must be an array");
    for (const json& r : row["b_ids"]) {
      if (!r.is_number_integer()) throw ValidationError("area " + std::to_string(id) + ": bad reference");
      a.edge_refs.push_back(r.get<std::int64_t>());
    }
    a.bbox = box_from(row.value("bbox", json()), "bbox");
    if (!areas.emplace(id, std::move(a)).second)
      throw ValidationError("area " + std::to_string(id) + ": duplicate a_id");
  }
  const json& catalogs = array("catalog");
  if (catalogs.size() != 1 || !catalogs[0].is_object())
    throw ValidationError("store needs exactly one catalog row");
  const json& c = catalogs[0];
  const auto text_field = [&](const char* key) {
    if (!c.contains(key) || !c[key].is_string())
      throw ValidationError(std::string("catalog field '") + key + "' must be a string");
    return c[key].get<std::string>();
  };
  TopologyCatalog catalog;
  catalog.ind_relname = text_field("ind_relname");
  catalog.ind_relattr = text_field("ind_relattr");
  catalog.topoltype = text_field("topoltype");
  catalog.ref_count = integer(c, "ref_count");
  catalog.ref_relname = text_field("ref_relname");
  catalog.ref_relid = text_field("ref_relid");
  catalog.ref_relvis = text_field("ref_relvis");
  catalog.ref_relbbox = text_field("ref_relbbox");
  return TopologyStore(std::move(edges), std::move(areas), std::move(catalog));
}

} // namespace landcore
