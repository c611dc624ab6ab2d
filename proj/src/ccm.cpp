#include "landcore/ccm.hpp"

#include "landcore/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <queue>

namespace landcore {

namespace {

void require_weight(double w, const std::string& what) {
  if (!(w > 0.0)) throw ValidationError(what + " weight must be > 0 or infinite");
}

} // namespace

CostMap::CostMap(std::vector<CostRegion> regions, Box2 extent, double default_weight)
    : regions_(std::move(regions)), extent_(extent), default_weight_(default_weight) {
  if (!(extent_.width() > 0.0 && extent_.height() > 0.0))
    throw ValidationError("cost map extent is degenerate");
  require_weight(default_weight_, "default");
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    const std::string label = "region " + std::to_string(i);
    require_weight(regions_[i].weight, label);
    if (!extent_.contains(bbox(regions_[i].region)))
      throw ValidationError(label + " extends beyond the map extent");
    for (std::size_t j = 0; j < i; ++j)
      if (interiors_overlap(regions_[i].region, regions_[j].region))
        throw ValidationError(label + " overlaps region " + std::to_string(j));
  }
}

std::optional<std::size_t> CostMap::region_at(Point2 p) const {
  for (std::size_t i = 0; i < regions_.size(); ++i)
    if (point_in_polygon(p, regions_[i].region)) return i;
  return std::nullopt;
}

double CostMap::weight_at(Point2 p) const {
  const auto r = region_at(p);
  return r ? regions_[*r].weight : default_weight_;
}

CostMap CostMap::scaled(double k) const {
  if (!(k > 0.0)) throw ValidationError("weight scale must be > 0");
  std::vector<CostRegion> regions = regions_;
  for (CostRegion& r : regions) r.weight *= k;
  return CostMap(std::move(regions), extent_, default_weight_ * k);
}

CostGrid::CostGrid(Point2 origin, double cell_size, std::size_t ncols, std::size_t nrows,
                   std::vector<double> weights)
    : origin_(origin), cell_size_(cell_size), ncols_(ncols), nrows_(nrows),
      weights_(std::move(weights)) {
  if (!(cell_size_ > 0.0)) throw ValidationError("cell size must be > 0");
  if (ncols_ == 0 || nrows_ == 0) throw ValidationError("grid needs at least one cell");
  if (weights_.size() != ncols_ * nrows_) throw ValidationError("grid weight count mismatch");
  for (double w : weights_) require_weight(w, "cell");
}

Point2 CostGrid::center(std::size_t col, std::size_t row) const {
  return {origin_.x + (static_cast<double>(col) + 0.5) * cell_size_,
          origin_.y + (static_cast<double>(row) + 0.5) * cell_size_};
}

std::optional<CostGrid::Cell> CostGrid::cell_of(Point2 p) const {
  const double fx = (p.x - origin_.x) / cell_size_;
  const double fy = (p.y - origin_.y) / cell_size_;
  if (!(fx >= 0.0 && fy >= 0.0)) return std::nullopt;
  auto col = static_cast<std::size_t>(std::floor(fx));
  auto row = static_cast<std::size_t>(std::floor(fy));
  if (col == ncols_ && fx == static_cast<double>(ncols_)) --col;
  if (row == nrows_ && fy == static_cast<double>(nrows_)) --row;
  if (col >= ncols_ || row >= nrows_) return std::nullopt;
  return Cell{col, row};
}

Connectivity connectivity_from_int(int n) {
  switch (n) {
  case 4: return Connectivity::four;
  case 8: return Connectivity::eight;
  case 16: return Connectivity::sixteen;
  }
  throw ValidationError("connectivity must be 4, 8 or 16, got " + std::to_string(n));
}

std::string PathMethod::name() const {
  if (kind == Kind::raster) return "RASTER-" + std::to_string(parameter);
  return "VECTOR(" + std::to_string(parameter) + ")";
}

CostGrid rasterize(const CostMap& map, double cell_size) {
  if (!(cell_size > 0.0)) throw ValidationError("cell size must be > 0");
  const Box2& ext = map.extent();
  const auto count = [&](double span) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / cell_size - 1e-9)));
  };
  const std::size_t ncols = count(ext.width());
  const std::size_t nrows = count(ext.height());
  std::vector<double> weights(ncols * nrows, map.default_weight());
  std::vector<unsigned char> assigned(ncols * nrows, 0);

  std::vector<double> xs, ys;
  std::vector<unsigned char> hit;
  for (const CostRegion& region : map.regions()) {
    const Box2 rb = bbox(region.region);
    const auto lo = [&](double v, double o) {
      const double f = std::floor((v - o) / cell_size - 0.5);
      return static_cast<std::size_t>(std::max(0.0, f));
    };
    const auto hi = [&](double v, double o, std::size_t n) {
      const double f = std::ceil((v - o) / cell_size - 0.5);
      return std::min(n - 1, static_cast<std::size_t>(std::max(0.0, f)));
    };
    const std::size_t c0 = lo(rb.min.x, ext.min.x), c1 = hi(rb.max.x, ext.min.x, ncols);
    const std::size_t r0 = lo(rb.min.y, ext.min.y), r1 = hi(rb.max.y, ext.min.y, nrows);
    const std::size_t width = c1 - c0 + 1;
    xs.resize(width);
    ys.resize(width);
    hit.resize(width);
    for (std::size_t r = r0; r <= r1; ++r) {
      for (std::size_t c = c0; c <= c1; ++c) {
        xs[c - c0] = ext.min.x + (static_cast<double>(c) + 0.5) * cell_size;
        ys[c - c0] = ext.min.y + (static_cast<double>(r) + 0.5) * cell_size;
      }
      points_in_polygon(xs, ys, region.region, hit);
      for (std::size_t c = c0; c <= c1; ++c) {
        const std::size_t id = r * ncols + c;
        if (hit[c - c0] && !assigned[id]) {
          weights[id] = region.weight;
          assigned[id] = 1;
        }
      }
    }
  }
  return CostGrid(ext.min, cell_size, ncols, nrows, std::move(weights));
}

namespace {

struct Move {
  int dc;
  int dr;
};

std::vector<Move> moves_for(Connectivity c) {
  std::vector<Move> moves{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  if (c == Connectivity::four) return moves;
  for (Move m : {Move{1, 1}, Move{-1, 1}, Move{-1, -1}, Move{1, -1}}) moves.push_back(m);
  if (c == Connectivity::eight) return moves;
  for (Move m : {Move{2, 1}, Move{1, 2}, Move{-1, 2}, Move{-2, 1}, Move{-2, -1}, Move{-1, -2},
                 Move{1, -2}, Move{2, -1}})
    moves.push_back(m);
  return moves;
}

using QueueEntry = std::pair<double, std::size_t>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

constexpr std::size_t kNoNode = static_cast<std::size_t>(-1);

} // namespace

PathResult raster_path(const CostGrid& grid, Point2 s, Point2 t, Connectivity connectivity) {
  PathResult result;
  result.method = {PathMethod::Kind::raster, static_cast<int>(connectivity)};
  const auto sc = grid.cell_of(s);
  const auto tc = grid.cell_of(t);
  if (!sc || !tc) throw ValidationError("path endpoint lies outside the cost grid");
  if (std::isinf(grid.weight(sc->col, sc->row)) || std::isinf(grid.weight(tc->col, tc->row)))
    throw ValidationError("path endpoint lies on an impassable cell");

  const std::size_t ncols = grid.ncols();
  const std::size_t nrows = grid.nrows();
  const std::size_t source = sc->row * ncols + sc->col;
  const std::size_t target = tc->row * ncols + tc->col;
  const std::vector<Move> moves = moves_for(connectivity);
  std::vector<double> step(moves.size());
  for (std::size_t k = 0; k < moves.size(); ++k)
    step[k] = grid.cell_size() * std::sqrt(double(moves[k].dc * moves[k].dc + moves[k].dr * moves[k].dr));

  const auto weights = grid.weights();
  std::vector<double> dist(weights.size(), kInfiniteWeight);
  std::vector<std::size_t> prev(weights.size(), kNoNode);
  std::vector<unsigned char> done(weights.size(), 0);
  MinQueue queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (u == target) break;
    const auto uc = static_cast<long long>(u % ncols);
    const auto ur = static_cast<long long>(u / ncols);
    for (std::size_t k = 0; k < moves.size(); ++k) {
      const long long vc = uc + moves[k].dc;
      const long long vr = ur + moves[k].dr;
      if (vc < 0 || vr < 0 || vc >= static_cast<long long>(ncols) || vr >= static_cast<long long>(nrows))
        continue;
      const std::size_t v = static_cast<std::size_t>(vr) * ncols + static_cast<std::size_t>(vc);
      if (done[v] || std::isinf(weights[v])) continue;
      const double nd = d + step[k] * (0.5 * (weights[u] + weights[v]));
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
        queue.emplace(nd, v);
      }
    }
  }
  if (!done[target]) return result;

  std::vector<std::size_t> cells;
  for (std::size_t v = target; v != kNoNode; v = prev[v]) cells.push_back(v);
  std::reverse(cells.begin(), cells.end());
  result.vertices.push_back(s);
  for (std::size_t i = 1; i + 1 < cells.size(); ++i)
    result.vertices.push_back(grid.center(cells[i] % ncols, cells[i] / ncols));
  result.vertices.push_back(t);
  result.total_cost = dist[target];
  return result;
}

Triangulation triangulate(const CostMap& map) { return triangulate(map, {}, {}); }

Triangulation triangulate(const CostMap& map, std::span<const Point2> extra_points,
                          std::span<const std::pair<Point2, Point2>> extra_segments) {
  std::vector<Point2> points;
  std::map<std::pair<double, double>, VertexIndex> ids;
  auto intern = [&](Point2 p) {
    auto [it, inserted] = ids.try_emplace({p.x, p.y}, static_cast<VertexIndex>(points.size()));
    if (inserted) points.push_back(p);
    return it->second;
  };
  std::vector<IndexPair> constraints;
  const Box2& e = map.extent();
  const VertexIndex c0 = intern(e.min), c1 = intern({e.max.x, e.min.y}), c2 = intern(e.max),
                    c3 = intern({e.min.x, e.max.y});
  constraints.insert(constraints.end(), {{c0, c1}, {c1, c2}, {c2, c3}, {c3, c0}});
  auto add_ring = [&](const Ring& ring) {
    const auto v = ring.vertices();
    for (std::size_t i = 0; i < v.size(); ++i)
      constraints.emplace_back(intern(v[i]), intern(v[(i + 1) % v.size()]));
  };
  for (const CostRegion& r : map.regions()) {
    add_ring(r.region.outer());
    for (const Ring& island : r.region.islands()) add_ring(island);
  }
  for (const Point2& p : extra_points) {
    if (!e.contains(p)) throw ValidationError("point lies outside the cost map extent");
    intern(p);
  }
  for (const auto& [a, b] : extra_segments) constraints.emplace_back(intern(a), intern(b));

  Triangulation tri = triangulate_points(points, constraints);
  tri.triangle_region.reserve(tri.triangles.size());
  for (const auto& t : tri.triangles) {
    const Point2 centroid = (1.0 / 3.0) * (tri.points[t[0]] + tri.points[t[1]] + tri.points[t[2]]);
    const auto r = map.region_at(centroid);
    tri.triangle_region.push_back(r ? static_cast<int>(*r) : -1);
  }
  return tri;
}

double steiner_fraction(std::size_t k) {
  if (k == 0) throw ValidationError("Steiner positions are 1-based");
  // Van der Corput radical inverse in base 2.
  double f = 0.0;
  double scale = 0.5;
  for (std::size_t n = k; n > 0; n >>= 1, scale *= 0.5)
    if (n & 1) f += scale;
  return f;
}

namespace {

// True when segment s-t meets no region boundary, so it lies inside a
// single face of the subdivision.
bool within_one_face(const CostMap& map, Point2 s, Point2 t) {
  for (const CostRegion& r : map.regions()) {
    const simd::SegmentSoA& b = r.region.segments();
    for (std::size_t i = 0; i < b.size(); ++i)
      if (segments_intersect(s, t, {b.ax[i], b.ay[i]}, {b.bx[i], b.by[i]})) return false;
  }
  return true;
}

} // namespace

PathResult vector_path(const CostMap& map, Point2 s, Point2 t, std::size_t steiner_per_edge) {
  PathResult result;
  result.method = {PathMethod::Kind::vector, static_cast<int>(steiner_per_edge)};
  if (steiner_per_edge < 1) throw ValidationError("need at least one Steiner point per edge");
  if (!map.extent().contains(s) || !map.extent().contains(t))
    throw ValidationError("path endpoint lies outside the cost map extent");
  if (std::isinf(map.weight_at(s)) || std::isinf(map.weight_at(t)))
    throw ValidationError("path endpoint lies in an impassable region");
  if (s == t) {
    result.vertices = {s, t};
    result.total_cost = 0.0;
    return result;
  }

  const Point2 ends[2] = {s, t};
  std::vector<std::pair<Point2, Point2>> direct;
  if (within_one_face(map, s, t)) direct.emplace_back(s, t);
  const Triangulation tri = triangulate(map, ends, direct);

  const std::size_t nv = tri.points.size();
  const auto find_vertex = [&](Point2 p) {
    for (std::size_t i = 0; i < nv; ++i)
      if (tri.points[i] == p) return i;
    throw IntegrityError("endpoint missing from triangulation");
  };
  const std::size_t source = find_vertex(s);
  const std::size_t target = find_vertex(t);

  const std::vector<IndexPair> edges = tri.edges();
  const std::size_t m = steiner_per_edge;
  std::vector<Point2> nodes(tri.points);
  nodes.reserve(nv + edges.size() * m);
  for (const auto& [a, b] : edges) {
    const Point2 pa = tri.points[a], pb = tri.points[b];
    for (std::size_t k = 1; k <= m; ++k) nodes.push_back(pa + steiner_fraction(k) * (pb - pa));
  }
  const auto edge_index = [&](VertexIndex a, VertexIndex b) {
    const IndexPair key{std::min(a, b), std::max(a, b)};
    return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), key) - edges.begin());
  };

  std::vector<std::vector<std::pair<std::size_t, double>>> adj(nodes.size());
  std::vector<std::size_t> local;
  for (std::size_t ti = 0; ti < tri.triangles.size(); ++ti) {
    const int region = tri.triangle_region[ti];
    const double w = region >= 0 ? map.regions()[static_cast<std::size_t>(region)].weight
                                 : map.default_weight();
    if (std::isinf(w)) continue;
    const auto& v = tri.triangles[ti];
    local.assign(v.begin(), v.end());
    for (int i = 0; i < 3; ++i) {
      const std::size_t base = nv + edge_index(v[i], v[(i + 1) % 3]) * m;
      for (std::size_t k = 0; k < m; ++k) local.push_back(base + k);
    }
    for (std::size_t i = 0; i < local.size(); ++i)
      for (std::size_t j = i + 1; j < local.size(); ++j) {
        const double cost = distance(nodes[local[i]], nodes[local[j]]) * w;
        adj[local[i]].emplace_back(local[j], cost);
        adj[local[j]].emplace_back(local[i], cost);
      }
  }

  std::vector<double> dist(nodes.size(), kInfiniteWeight);
  std::vector<std::size_t> prev(nodes.size(), kNoNode);
  std::vector<unsigned char> done(nodes.size(), 0);
  MinQueue queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (u == target) break;
    for (const auto& [v, c] : adj[u]) {
      if (done[v]) continue;
      const double nd = d + c;
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
        queue.emplace(nd, v);
      }
    }
  }
  if (!done[target]) return result;
  for (std::size_t v = target; v != kNoNode; v = prev[v]) result.vertices.push_back(nodes[v]);
  std::reverse(result.vertices.begin(), result.vertices.end());
  result.total_cost = dist[target];
  return result;
}

ConvergenceReport convergence_report(const CostMap& map, Point2 s, Point2 t,
                                     std::span<const double> cell_sizes,
                                     std::span<const Connectivity> connectivities,
                                     std::span<const std::size_t> m_values) {
  if (cell_sizes.empty() && m_values.empty())
    throw ValidationError("convergence report needs at least one resolution or Steiner count");
  if (!cell_sizes.empty() && connectivities.empty())
    throw ValidationError("raster resolutions need at least one connectivity");
  using Clock = std::chrono::steady_clock;
  const auto elapsed_ms = [](Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
  };

  ConvergenceReport report;
  std::vector<Connectivity> conn(connectivities.begin(), connectivities.end());
  std::sort(conn.begin(), conn.end());
  for (double cell : cell_sizes) {
    const CostGrid grid = rasterize(map, cell);
    double previous = kInfiniteWeight;
    for (Connectivity c : conn) {
      const auto start = Clock::now();
      const PathResult path = raster_path(grid, s, t, c);
      report.rows.push_back({path.method, cell, path.total_cost, elapsed_ms(start)});
      if (path.total_cost > previous) report.raster_monotone = false;
      previous = path.total_cost;
    }
  }
  std::vector<std::size_t> ms(m_values.begin(), m_values.end());
  std::sort(ms.begin(), ms.end());
  double best_vector = kInfiniteWeight;
  double previous = kInfiniteWeight;
  for (std::size_t m : ms) {
    const auto start = Clock::now();
    const PathResult path = vector_path(map, s, t, m);
    report.rows.push_back({path.method, static_cast<double>(m), path.total_cost, elapsed_ms(start)});
    if (path.total_cost > previous) report.vector_monotone = false;
    previous = path.total_cost;
    best_vector = std::min(best_vector, path.total_cost);
  }
  if (!ms.empty())
    for (const ConvergenceRow& row : report.rows)
      if (row.cost < best_vector) report.above_best_vector = false;
  return report;
}

} // namespace landcore
