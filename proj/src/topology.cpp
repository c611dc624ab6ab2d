#include "landcore/topology.hpp"

#include "landcore/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>
#include <unordered_map>

namespace landcore {

namespace {

std::string area_label(AreaId id) { return "area " + std::to_string(id); }

} // namespace

TopologyStore::TopologyStore(std::map<EdgeId, Edge> edges, std::map<AreaId, AreaRecord> areas,
                             TopologyCatalog catalog)
    : edges_(std::move(edges)), areas_(std::move(areas)), catalog_(std::move(catalog)) {
  static const std::set<std::string> kTypes{"linear", "polygonal network", "hierarchy"};
  if (!kTypes.contains(catalog_.topoltype))
    throw IntegrityError("unknown topology type '" + catalog_.topoltype + "'");

  struct Uses {
    int positive = 0;
    int negative = 0;
    std::optional<AreaId> pos_area;
    std::optional<AreaId> neg_area;
  };
  std::map<EdgeId, Uses> uses;
  for (const auto& [id, e] : edges_) {
    if (id != e.b_id || id <= 0) throw IntegrityError("edge key/id mismatch for edge " + std::to_string(id));
    if (!e.left && !e.right) throw IntegrityError("edge " + std::to_string(id) + " has no adjacent area");
    if (!e.abox.contains(e.bbox)) throw IntegrityError("edge " + std::to_string(id) + " abox does not contain bbox");
    if (!(e.bbox == landcore::bbox(e.line)))
      throw IntegrityError("edge " + std::to_string(id) + " bbox is not tight");
    uses[id];
  }
  bool first = true;
  for (const auto& [id, a] : areas_) {
    if (id != a.a_id || id <= 0) throw IntegrityError("area key/id mismatch for area " + std::to_string(id));
    if (a.edge_refs.empty() || a.edge_refs.front() == 0)
      throw IntegrityError(area_label(id) + " has no outer ring references");
    for (std::int64_t ref : a.edge_refs) {
      if (ref == 0) continue;
      auto it = uses.find(std::llabs(ref));
      if (it == uses.end())
        throw IntegrityError(area_label(id) + " references missing edge " + std::to_string(std::llabs(ref)));
      if (ref > 0) {
        ++it->second.positive;
        it->second.pos_area = id;
      } else {
        ++it->second.negative;
        it->second.neg_area = id;
      }
    }
    if (first) {
      extent_ = a.bbox;
      first = false;
    } else {
      extent_.expand(a.bbox);
    }
  }
  for (const auto& [id, e] : edges_) {
    const Uses& u = uses[id];
    if (u.positive > 1 || u.negative > 1)
      throw IntegrityError("edge " + std::to_string(id) + " referenced more than once in one direction");
    if (u.pos_area != e.left || u.neg_area != e.right)
      throw IntegrityError("edge " + std::to_string(id) + " references disagree with its left/right areas");
  }
}

const Edge& TopologyStore::edge(EdgeId id) const {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw NotFoundError("no edge " + std::to_string(id));
  return it->second;
}

const AreaRecord& TopologyStore::area(AreaId id) const {
  auto it = areas_.find(id);
  if (it == areas_.end()) throw NotFoundError("no " + area_label(id));
  return it->second;
}

std::size_t TopologyStore::stored_vertex_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [id, e] : edges_) n += e.line.size();
  return n;
}

Box2 compute_abox(const Edge& e, const TopologyStore& store) {
  Box2 box = bbox(e.line);
  for (const auto& side : {e.left, e.right}) {
    if (!side) continue;
    auto it = store.areas().find(*side);
    if (it == store.areas().end())
      throw IntegrityError("edge " + std::to_string(e.b_id) + " names missing " + area_label(*side));
    box.expand(it->second.bbox);
  }
  return box;
}

namespace {

using VertexId = std::uint32_t;

struct SnapKey {
  std::int64_t x;
  std::int64_t y;
  friend bool operator==(const SnapKey&, const SnapKey&) = default;
};

struct SnapKeyHash {
  std::size_t operator()(const SnapKey& k) const noexcept {
    return std::hash<std::int64_t>{}(k.x) * 0x9E3779B97F4A7C15ull ^ std::hash<std::int64_t>{}(k.y);
  }
};

struct DirKey {
  VertexId from;
  VertexId to;
  friend bool operator==(const DirKey&, const DirKey&) = default;
};

struct DirKeyHash {
  std::size_t operator()(const DirKey& k) const noexcept {
    return (std::size_t(k.from) << 32) ^ k.to;
  }
};

// Snapped vertex table shared by all input rings.
class VertexTable {
public:
  VertexId intern(Point2 p) {
    const double kMaxCoord = 4e9; // keeps p / eps inside int64
    if (std::abs(p.x) > kMaxCoord || std::abs(p.y) > kMaxCoord)
      throw ValidationError("coordinate magnitude exceeds topology range");
    const SnapKey key{std::llround(p.x / kSnapTolerance), std::llround(p.y / kSnapTolerance)};
    auto [it, inserted] = ids_.try_emplace(key, static_cast<VertexId>(points_.size()));
    if (inserted) points_.push_back(p);
    return it->second;
  }
  Point2 point(VertexId v) const { return points_[v]; }
  std::size_t size() const noexcept { return points_.size(); }

private:
  std::unordered_map<SnapKey, VertexId, SnapKeyHash> ids_;
  std::vector<Point2> points_;
};

struct InputRing {
  std::size_t area_index;
  std::vector<VertexId> vertices; // outer CCW, islands CW
};

struct Segment {
  EdgeId edge;
  int sign;
};

std::vector<VertexId> snap_ring(const Ring& ring, bool want_ccw, VertexTable& table, AreaId id) {
  std::vector<Point2> pts(ring.vertices().begin(), ring.vertices().end());
  if (ring.is_ccw() != want_ccw) std::reverse(pts.begin(), pts.end());
  std::vector<VertexId> ids;
  ids.reserve(pts.size());
  for (const Point2& p : pts) {
    const VertexId v = table.intern(p);
    if (!ids.empty() && ids.back() == v) continue;
    ids.push_back(v);
  }
  while (ids.size() > 1 && ids.front() == ids.back()) ids.pop_back();
  if (ids.size() < 3) throw SnappingError(area_label(id) + ": ring collapses under snapping");
  std::set<VertexId> distinct(ids.begin(), ids.end());
  if (distinct.size() != ids.size())
    throw SnappingError(area_label(id) + ": ring revisits a vertex under snapping");
  return ids;
}

void check_partition(std::span<const AreaInput> inputs) {
  std::vector<Box2> boxes;
  boxes.reserve(inputs.size());
  for (const auto& [id, poly] : inputs) boxes.push_back(bbox(poly));

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (std::size_t j = 0; j < inputs.size(); ++j) {
      if (i == j || !boxes_overlap(boxes[i], boxes[j])) continue;
      const Polygon2& a = inputs[i].second;
      const Polygon2& b = inputs[j].second;
      const simd::SegmentSoA& bs = b.segments();
      auto check_ring = [&](const Ring& ring) {
        const auto v = ring.vertices();
        for (std::size_t k = 0; k < v.size(); ++k) {
          const Point2 p = v[k];
          if (locate(p, b) == simd::Location::inside)
            throw PartitionError(area_label(inputs[i].first) + " overlaps " + area_label(inputs[j].first));
          for (std::size_t s = 0; s < bs.size(); ++s) {
            const Point2 s0{bs.ax[s], bs.ay[s]};
            const Point2 s1{bs.bx[s], bs.by[s]};
            if (distance(p, s0) <= kSnapTolerance || distance(p, s1) <= kSnapTolerance) continue;
            if (point_segment_distance(p, s0, s1) <= kSnapTolerance)
              throw SnappingError(area_label(inputs[i].first) + " has a vertex on a boundary of " +
                                  area_label(inputs[j].first) + " that is not a shared vertex");
          }
          if (i < j) {
            const Point2 q = v[(k + 1) % v.size()];
            if (simd::kernels().any_proper_crossing(p.x, p.y, q.x, q.y, bs))
              throw PartitionError(area_label(inputs[i].first) + " crosses " + area_label(inputs[j].first));
          }
        }
      };
      check_ring(a.outer());
      for (const Ring& r : a.islands()) check_ring(r);
    }
  }
}

} // namespace

TopologyStore build_topology(std::span<const AreaInput> inputs) {
  if (inputs.empty()) throw ValidationError("topology build needs at least one area");
  {
    std::set<AreaId> ids;
    for (const auto& [id, poly] : inputs) {
      if (id <= 0) throw ValidationError("area ids must be positive, got " + std::to_string(id));
      if (!ids.insert(id).second) throw ValidationError("duplicate " + area_label(id));
    }
  }
  check_partition(inputs);

  VertexTable table;
  std::vector<std::vector<InputRing>> rings(inputs.size());
  for (std::size_t a = 0; a < inputs.size(); ++a) {
    const auto& [id, poly] = inputs[a];
    rings[a].push_back({a, snap_ring(poly.outer(), true, table, id)});
    for (const Ring& island : poly.islands())
      rings[a].push_back({a, snap_ring(island, false, table, id)});
  }

  // Directed segment -> owning area; neighbours per vertex.
  std::unordered_map<DirKey, std::size_t, DirKeyHash> owner;
  std::vector<std::vector<VertexId>> neighbours(table.size());
  auto link = [&](VertexId u, VertexId v) {
    auto& nu = neighbours[u];
    if (std::find(nu.begin(), nu.end(), v) == nu.end()) nu.push_back(v);
  };
  for (const auto& area_rings : rings) {
    for (const InputRing& r : area_rings) {
      const auto& v = r.vertices;
      for (std::size_t k = 0; k < v.size(); ++k) {
        const VertexId u = v[k];
        const VertexId w = v[(k + 1) % v.size()];
        auto [it, inserted] = owner.try_emplace(DirKey{u, w}, r.area_index);
        if (!inserted) {
          throw PartitionError(area_label(inputs[it->second].first) + " and " +
                               area_label(inputs[r.area_index].first) +
                               " traverse a shared boundary in the same direction");
        }
        link(u, w);
        link(w, u);
      }
    }
  }
  auto is_node = [&](VertexId v) { return neighbours[v].size() != 2; };
  auto other = [&](VertexId at, VertexId from) {
    const auto& n = neighbours[at];
    return n[0] == from ? n[1] : n[0];
  };

  std::unordered_map<DirKey, Segment, DirKeyHash> seg_edge;
  std::map<EdgeId, Edge> edges;
  EdgeId next_id = 1;

  for (const auto& area_rings : rings) {
    for (const InputRing& r : area_rings) {
      const auto& v = r.vertices;
      for (std::size_t k = 0; k < v.size(); ++k) {
        const VertexId u = v[k];
        const VertexId w = v[(k + 1) % v.size()];
        if (seg_edge.contains(DirKey{u, w})) continue;

        std::deque<VertexId> chain{u, w};
        bool closed = false;
        for (VertexId prev = u, cur = w; !is_node(cur);) {
          const VertexId nxt = other(cur, prev);
          chain.push_back(nxt);
          if (nxt == chain.front()) {
            closed = true;
            break;
          }
          prev = cur;
          cur = nxt;
        }
        if (!closed) {
          for (VertexId prev = w, cur = u; !is_node(cur);) {
            const VertexId nxt = other(cur, prev);
            chain.push_front(nxt);
            prev = cur;
            cur = nxt;
          }
        }

        const EdgeId id = next_id++;
        std::vector<Point2> pts;
        pts.reserve(chain.size());
        for (VertexId c : chain) pts.push_back(table.point(c));
        const DirKey head{chain[0], chain[1]};
        std::optional<AreaId> left, right;
        if (auto it = owner.find(head); it != owner.end()) left = inputs[it->second].first;
        if (auto it = owner.find(DirKey{chain[1], chain[0]}); it != owner.end())
          right = inputs[it->second].first;
        for (std::size_t c = 0; c + 1 < chain.size(); ++c) {
          seg_edge[DirKey{chain[c], chain[c + 1]}] = {id, +1};
          seg_edge[DirKey{chain[c + 1], chain[c]}] = {id, -1};
        }
        Polyline2 line(std::move(pts));
        const Box2 box = bbox(line);
        edges.emplace(id, Edge{id, std::move(line), box, box, left, right});
      }
    }
  }

  std::map<AreaId, AreaRecord> areas;
  for (std::size_t a = 0; a < inputs.size(); ++a) {
    AreaRecord rec;
    rec.a_id = inputs[a].first;
    rec.bbox = bbox(inputs[a].second);
    for (std::size_t ri = 0; ri < rings[a].size(); ++ri) {
      const auto& v = rings[a][ri].vertices;
      if (ri > 0) rec.edge_refs.push_back(0);
      std::size_t start = 0;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (is_node(v[k])) {
          start = k;
          break;
        }
      EdgeId last = 0;
      for (std::size_t k = 0; k < v.size(); ++k) {
        const VertexId u = v[(start + k) % v.size()];
        const VertexId w = v[(start + k + 1) % v.size()];
        const Segment s = seg_edge.at(DirKey{u, w});
        if (s.edge == last) continue;
        rec.edge_refs.push_back(s.sign * s.edge);
        last = s.edge;
      }
    }
    areas.emplace(rec.a_id, std::move(rec));
  }

  // aboxes need every area bbox, so they are filled in a second pass.
  {
    TopologyStore provisional(edges, areas);
    for (auto& [id, e] : edges) e.abox = compute_abox(e, provisional);
  }
  return TopologyStore(std::move(edges), std::move(areas));
}

namespace {

using EdgeLookup = std::function<const Edge*(EdgeId)>;

// Rebuilds an area from its references; returns nullopt if an edge is
// unavailable through `lookup`. Throws IntegrityError for chains that do
// not close.
std::optional<Polygon2> assemble(const AreaRecord& rec, const EdgeLookup& lookup) {
  std::vector<std::vector<Point2>> rings(1);
  for (std::int64_t ref : rec.edge_refs) {
    if (ref == 0) {
      rings.emplace_back();
      continue;
    }
    const Edge* e = lookup(std::llabs(ref));
    if (!e) return std::nullopt;
    std::vector<Point2> pts(e->line.vertices().begin(), e->line.vertices().end());
    if (ref < 0) std::reverse(pts.begin(), pts.end());
    auto& ring = rings.back();
    if (ring.empty()) {
      ring = std::move(pts);
    } else {
      if (!(ring.back() == pts.front()))
        throw IntegrityError(area_label(rec.a_id) + ": edge " + std::to_string(std::llabs(ref)) +
                             " does not continue the ring");
      ring.insert(ring.end(), pts.begin() + 1, pts.end());
    }
  }
  std::vector<Ring> closed;
  for (auto& pts : rings) {
    if (pts.size() < 2 || !(pts.front() == pts.back()))
      throw IntegrityError(area_label(rec.a_id) + ": ring does not close");
    pts.pop_back();
    Ring ring(std::move(pts));
    closed.push_back(std::move(ring));
  }
  Ring outer = closed.front().is_ccw() ? closed.front() : closed.front().reversed();
  std::vector<Ring> islands;
  for (std::size_t i = 1; i < closed.size(); ++i)
    islands.push_back(closed[i].is_ccw() ? closed[i].reversed() : closed[i]);
  return Polygon2(std::move(outer), std::move(islands));
}

} // namespace

Polygon2 reconstruct_polygon(AreaId a_id, const TopologyStore& store) {
  const AreaRecord& rec = store.area(a_id);
  auto lookup = [&](EdgeId id) -> const Edge* {
    auto it = store.edges().find(id);
    if (it == store.edges().end())
      throw IntegrityError(area_label(a_id) + " references missing edge " + std::to_string(id));
    return &it->second;
  };
  return *assemble(rec, lookup);
}

WindowResult window_query_with(const TopologyStore& store, const Box2& window,
                               EdgeSelection selection) {
  WindowResult result;
  std::map<EdgeId, const Edge*> selected;
  std::set<AreaId> candidates;
  for (const auto& [id, e] : store.edges()) {
    const Box2& key = selection == EdgeSelection::abox ? e.abox : e.bbox;
    if (!boxes_overlap(key, window)) continue;
    selected.emplace(id, &e);
    if (e.left) candidates.insert(*e.left);
    if (e.right) candidates.insert(*e.right);
  }
  result.edges_selected = selected.size();
  auto lookup = [&](EdgeId id) -> const Edge* {
    auto it = selected.find(id);
    return it == selected.end() ? nullptr : it->second;
  };
  for (AreaId id : candidates) {
    const AreaRecord& rec = store.area(id);
    if (!boxes_overlap(rec.bbox, window)) continue;
    if (auto poly = assemble(rec, lookup))
      result.areas.emplace_back(id, std::move(*poly));
    else
      result.incomplete.push_back(id);
  }
  return result;
}

std::vector<AreaInput> window_query(const TopologyStore& store, const Box2& window) {
  return window_query_with(store, window, EdgeSelection::abox).areas;
}

} // namespace landcore
