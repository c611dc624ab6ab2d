#pragma once

// Topological storage of a planar partition.
//
// Every maximal boundary chain between two areas (or between an area and
// the exterior) is stored once as an Edge. Areas reference their edges by
// signed id: +b traverses the edge in stored order, -b in reverse. The
// outer ring comes first; each island ring is preceded by a 0 separator.
// Outer rings are reconstructed counter-clockwise and islands clockwise,
// so an edge's left area is the one whose reference is positive.
//
// Each edge carries an "abox": its own bbox grown by the bboxes of both
// adjacent areas. Selecting edges by abox instead of bbox guarantees that
// every area overlapping a query window can be rebuilt from the selected
// edges alone.

#include "landcore/geometry.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace landcore {

using AreaId = std::int64_t;
using EdgeId = std::int64_t;

struct Edge {
  EdgeId b_id = 0;
  Polyline2 line;
  Box2 bbox;
  Box2 abox;
  std::optional<AreaId> left;
  std::optional<AreaId> right;

  bool is_interior() const noexcept { return left.has_value() && right.has_value(); }
};

struct AreaRecord {
  AreaId a_id = 0;
  std::vector<std::int64_t> edge_refs;
  Box2 bbox;
};

// Describes the area -> boundary indirection, one row per topology.
struct TopologyCatalog {
  std::string ind_relname = "areas";
  std::string ind_relattr = "b_ids";
  std::string topoltype = "polygonal network";
  std::int64_t ref_count = 0; // 0 = variable number of references
  std::string ref_relname = "boundaries";
  std::string ref_relid = "b_id";
  std::string ref_relvis = "line";
  std::string ref_relbbox = "abox";

  friend bool operator==(const TopologyCatalog&, const TopologyCatalog&) = default;
};

class TopologyStore {
public:
  // Checks every store invariant and throws IntegrityError on violation.
  TopologyStore(std::map<EdgeId, Edge> edges, std::map<AreaId, AreaRecord> areas,
                TopologyCatalog catalog = {});

  const std::map<EdgeId, Edge>& edges() const noexcept { return edges_; }
  const std::map<AreaId, AreaRecord>& areas() const noexcept { return areas_; }
  const TopologyCatalog& catalog() const noexcept { return catalog_; }
  const Box2& extent() const noexcept { return extent_; }

  const Edge& edge(EdgeId id) const;
  const AreaRecord& area(AreaId id) const;

  // Σ vertices over all stored edge lines.
  std::size_t stored_vertex_count() const noexcept;

private:
  std::map<EdgeId, Edge> edges_;
  std::map<AreaId, AreaRecord> areas_;
  TopologyCatalog catalog_;
  Box2 extent_;
};

using AreaInput = std::pair<AreaId, Polygon2>;

// Throws PartitionError if interiors overlap, SnappingError if a vertex
// of one area lies on another's boundary without being one of its
// vertices, ValidationError for bad ids.
TopologyStore build_topology(std::span<const AreaInput> inputs);

// bbox(e.line) ∪ bbox(left area) ∪ bbox(right area). Throws IntegrityError
// for an area id missing from the store.
Box2 compute_abox(const Edge& e, const TopologyStore& store);

// Throws NotFoundError for an unknown id and IntegrityError if the
// references do not chain into closed rings.
Polygon2 reconstruct_polygon(AreaId a_id, const TopologyStore& store);

enum class EdgeSelection { abox, bbox };

struct WindowResult {
  // Areas whose bbox overlaps the window and whose every edge was
  // selected, ascending by id.
  std::vector<AreaInput> areas;
  // Areas known to overlap the window whose rings could not be closed
  // from the selected edges.
  std::vector<AreaId> incomplete;
  std::size_t edges_selected = 0;
};

// Window retrieval with a selectable edge filter. EdgeSelection::bbox
// exists to demonstrate why the abox is needed; it can miss areas.
WindowResult window_query_with(const TopologyStore& store, const Box2& window,
                               EdgeSelection selection);

std::vector<AreaInput> window_query(const TopologyStore& store, const Box2& window);

} // namespace landcore
