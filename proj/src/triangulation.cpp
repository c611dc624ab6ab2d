#include "landcore/triangulation.hpp"

#include "landcore/error.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

namespace landcore {

double incircle(Point2 a, Point2 b, Point2 c, Point2 d) noexcept {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
         clift * (adx * bdy - bdx * ady);
}

std::vector<IndexPair> Triangulation::edges() const {
  std::vector<IndexPair> out;
  out.reserve(triangles.size() * 3);
  for (const auto& t : triangles)
    for (int i = 0; i < 3; ++i) {
      const VertexIndex a = t[i], b = t[(i + 1) % 3];
      out.emplace_back(std::min(a, b), std::max(a, b));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::uint64_t key(VertexIndex a, VertexIndex b) { return (std::uint64_t(a) << 32) | b; }

IndexPair normalized(VertexIndex a, VertexIndex b) { return {std::min(a, b), std::max(a, b)}; }

bool strictly_opposite(double a, double b) { return (a > 0 && b < 0) || (a < 0 && b > 0); }

class Builder {
public:
  Builder(std::vector<Point2> points, std::size_t real_count)
      : pts_(std::move(points)), real_(real_count) {}

  void seed(VertexIndex a, VertexIndex b, VertexIndex c) { add_tri(a, b, c); }

  void insert_point(VertexIndex p) {
    const Point2 q = pts_[p];
    std::vector<std::uint32_t> seeds;
    for (std::uint32_t t = 0; t < tris_.size(); ++t) {
      if (!tris_[t].alive) continue;
      const auto& v = tris_[t].v;
      if (orient(pts_[v[0]], pts_[v[1]], q) >= 0 && orient(pts_[v[1]], pts_[v[2]], q) >= 0 &&
          orient(pts_[v[2]], pts_[v[0]], q) >= 0)
        seeds.push_back(t);
    }
    if (seeds.empty()) throw TriangulationError("point outside the working triangulation");

    std::set<std::uint32_t> excluded;
    std::vector<std::uint32_t> cavity;
    std::vector<std::array<VertexIndex, 2>> boundary;
    for (;;) {
      cavity = grow_cavity(seeds, q, excluded);
      std::set<std::uint32_t> in(cavity.begin(), cavity.end());
      boundary.clear();
      std::vector<std::uint32_t> bad;
      for (std::uint32_t t : cavity) {
        const auto& v = tris_[t].v;
        for (int i = 0; i < 3; ++i) {
          const VertexIndex a = v[i], b = v[(i + 1) % 3];
          auto n = neighbour(a, b);
          if (n && in.contains(*n)) continue;
          if (orient(pts_[a], pts_[b], q) <= 0) {
            if (std::find(seeds.begin(), seeds.end(), t) != seeds.end())
              throw TriangulationError("degenerate insertion cavity");
            bad.push_back(t);
          }
          boundary.push_back({a, b});
        }
      }
      if (bad.empty()) break;
      excluded.insert(bad.begin(), bad.end());
    }
    for (std::uint32_t t : cavity) kill(t);
    for (const auto& e : boundary) add_tri(e[0], e[1], p);
  }

  // `report` marks constraints that belong in the output list; hull
  // closure edges are enforced without being reported.
  void insert_constraint(VertexIndex a, VertexIndex b, bool report) {
    if (a == b) return;
    if (edge_tri_.contains(key(a, b)) || edge_tri_.contains(key(b, a))) {
      mark(a, b, report);
      return;
    }
    const Point2 pa = pts_[a], pb = pts_[b];
    // Split at input points lying on the open segment.
    std::optional<VertexIndex> split;
    double split_t = 2.0;
    const Point2 d = pb - pa;
    for (VertexIndex c = 0; c < real_; ++c) {
      if (c == a || c == b) continue;
      const Point2 pc = pts_[c];
      if (orient(pa, pb, pc) != 0.0) continue;
      const double t = dot(pc - pa, d) / dot(d, d);
      if (t > 0.0 && t < 1.0 && t < split_t) {
        split_t = t;
        split = c;
      }
    }
    if (split) {
      insert_constraint(a, *split, report);
      insert_constraint(*split, b, report);
      return;
    }

    std::vector<std::uint32_t> crossed;
    for (std::uint32_t t = 0; t < tris_.size(); ++t) {
      if (!tris_[t].alive) continue;
      const auto& v = tris_[t].v;
      for (int i = 0; i < 3; ++i) {
        const VertexIndex c = v[i], e = v[(i + 1) % 3];
        const Point2 pc = pts_[c], pe = pts_[e];
        if (strictly_opposite(orient(pa, pb, pc), orient(pa, pb, pe)) &&
            strictly_opposite(orient(pc, pe, pa), orient(pc, pe, pb))) {
          if (constrained_.contains(normalized(c, e)))
            throw TriangulationError("constraint segments cross");
          crossed.push_back(t);
          break;
        }
      }
    }
    if (crossed.empty()) throw TriangulationError("constraint could not be recovered");

    std::set<std::uint64_t> directed;
    for (std::uint32_t t : crossed) {
      const auto& v = tris_[t].v;
      for (int i = 0; i < 3; ++i) directed.insert(key(v[i], v[(i + 1) % 3]));
    }
    std::map<VertexIndex, VertexIndex> next;
    for (std::uint32_t t : crossed) {
      const auto& v = tris_[t].v;
      for (int i = 0; i < 3; ++i) {
        const VertexIndex u = v[i], w = v[(i + 1) % 3];
        if (!directed.contains(key(w, u))) next[u] = w;
      }
    }
    auto walk = [&](VertexIndex from, VertexIndex to) {
      std::vector<VertexIndex> chain;
      VertexIndex cur = from;
      for (std::size_t guard = 0; cur != to; ++guard) {
        auto it = next.find(cur);
        if (it == next.end() || guard > next.size())
          throw TriangulationError("constraint corridor is not a simple polygon");
        cur = it->second;
        if (cur != to) chain.push_back(cur);
      }
      return chain;
    };
    const std::vector<VertexIndex> side1 = walk(a, b);
    const std::vector<VertexIndex> side2 = walk(b, a);
    for (std::uint32_t t : crossed) kill(t);
    fill(a, b, side1);
    fill(b, a, side2);
    mark(a, b, report);
  }

  Triangulation finish() {
    Triangulation out;
    out.points.assign(pts_.begin(), pts_.begin() + static_cast<std::ptrdiff_t>(real_));
    for (const Tri& t : tris_) {
      if (!t.alive) continue;
      if (t.v[0] >= real_ || t.v[1] >= real_ || t.v[2] >= real_) continue;
      out.triangles.push_back(t.v);
    }
    if (out.triangles.empty()) throw TriangulationError("input points are collinear");
    out.constrained_edges.assign(reported_.begin(), reported_.end());
    return out;
  }

private:
  void mark(VertexIndex a, VertexIndex b, bool report) {
    constrained_.insert(normalized(a, b));
    if (report) reported_.insert(normalized(a, b));
  }

  struct Tri {
    std::array<VertexIndex, 3> v;
    bool alive = true;
  };

  std::optional<std::uint32_t> neighbour(VertexIndex a, VertexIndex b) const {
    auto it = edge_tri_.find(key(b, a));
    if (it == edge_tri_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::uint32_t> grow_cavity(const std::vector<std::uint32_t>& seeds, Point2 q,
                                         const std::set<std::uint32_t>& excluded) const {
    std::set<std::uint32_t> in(seeds.begin(), seeds.end());
    std::vector<std::uint32_t> order(seeds.begin(), seeds.end());
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto& v = tris_[order[k]].v;
      for (int i = 0; i < 3; ++i) {
        const VertexIndex a = v[i], b = v[(i + 1) % 3];
        if (constrained_.contains(normalized(a, b))) continue;
        auto n = neighbour(a, b);
        if (!n || in.contains(*n) || excluded.contains(*n)) continue;
        const auto& w = tris_[*n].v;
        if (incircle(pts_[w[0]], pts_[w[1]], pts_[w[2]], q) > 0.0) {
          in.insert(*n);
          order.push_back(*n);
        }
      }
    }
    return order;
  }

  void add_tri(VertexIndex a, VertexIndex b, VertexIndex c) {
    const double o = orient(pts_[a], pts_[b], pts_[c]);
    if (o == 0.0) throw TriangulationError("degenerate triangle");
    if (o < 0.0) std::swap(b, c);
    const auto id = static_cast<std::uint32_t>(tris_.size());
    tris_.push_back({{a, b, c}, true});
    for (auto [u, w] : {IndexPair{a, b}, IndexPair{b, c}, IndexPair{c, a}}) {
      auto [it, inserted] = edge_tri_.try_emplace(key(u, w), id);
      if (!inserted) throw TriangulationError("overlapping triangles");
    }
  }

  void kill(std::uint32_t t) {
    Tri& tri = tris_[t];
    tri.alive = false;
    for (int i = 0; i < 3; ++i) {
      auto it = edge_tri_.find(key(tri.v[i], tri.v[(i + 1) % 3]));
      if (it != edge_tri_.end() && it->second == t) edge_tri_.erase(it);
    }
  }

  bool in_circumcircle(VertexIndex a, VertexIndex b, VertexIndex c, VertexIndex d) const {
    if (orient(pts_[a], pts_[b], pts_[c]) < 0) std::swap(b, c);
    return incircle(pts_[a], pts_[b], pts_[c], pts_[d]) > 0.0;
  }

  // Retriangulates the pseudo-polygon bounded by base a-b and `chain`.
  void fill(VertexIndex a, VertexIndex b, const std::vector<VertexIndex>& chain) {
    if (chain.empty()) return;
    std::size_t pick = 0;
    for (std::size_t j = 1; j < chain.size(); ++j)
      if (in_circumcircle(a, b, chain[pick], chain[j])) pick = j;
    const VertexIndex c = chain[pick];
    add_tri(a, b, c);
    fill(a, c, std::vector<VertexIndex>(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(pick)));
    fill(c, b, std::vector<VertexIndex>(chain.begin() + static_cast<std::ptrdiff_t>(pick) + 1, chain.end()));
  }

  std::vector<Point2> pts_;
  std::size_t real_;
  std::vector<Tri> tris_;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_tri_;
  std::set<IndexPair> constrained_;
  std::set<IndexPair> reported_;
};

// Monotone-chain hull, collinear points excluded.
std::vector<VertexIndex> convex_hull(const std::vector<Point2>& pts) {
  std::vector<VertexIndex> idx(pts.size());
  for (VertexIndex i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](VertexIndex a, VertexIndex b) {
    return pts[a].x != pts[b].x ? pts[a].x < pts[b].x : pts[a].y < pts[b].y;
  });
  std::vector<VertexIndex> hull(2 * idx.size());
  std::size_t k = 0;
  for (VertexIndex i : idx) {
    while (k >= 2 && orient(pts[hull[k - 2]], pts[hull[k - 1]], pts[i]) <= 0) --k;
    hull[k++] = i;
  }
  for (std::size_t j = idx.size() - 1, lower = k + 1; j-- > 0;) {
    const VertexIndex i = idx[j];
    while (k >= lower && orient(pts[hull[k - 2]], pts[hull[k - 1]], pts[i]) <= 0) --k;
    hull[k++] = i;
  }
  hull.resize(k > 0 ? k - 1 : 0);
  return hull;
}

} // namespace

Triangulation triangulate_points(std::span<const Point2> input,
                                 std::span<const IndexPair> constraints) {
  std::vector<Point2> pts;
  std::vector<VertexIndex> remap(input.size());
  {
    std::map<std::pair<double, double>, VertexIndex> seen;
    for (std::size_t i = 0; i < input.size(); ++i) {
      if (!is_finite(input[i])) throw TriangulationError("non-finite point");
      auto [it, inserted] =
          seen.try_emplace({input[i].x, input[i].y}, static_cast<VertexIndex>(pts.size()));
      if (inserted) pts.push_back(input[i]);
      remap[i] = it->second;
    }
  }
  if (pts.size() < 3) throw TriangulationError("need at least three distinct points");
  const std::vector<VertexIndex> hull = convex_hull(pts);
  if (hull.size() < 3) throw TriangulationError("input points are collinear");

  const Box2 box = bbox(pts);
  const Point2 c = box.center();
  const double span = std::max({box.width(), box.height(), 1.0});
  const std::size_t n = pts.size();
  pts.push_back({c.x - 20 * span, c.y - span});
  pts.push_back({c.x + 20 * span, c.y - span});
  pts.push_back({c.x, c.y + 20 * span});

  Builder builder(pts, n);
  builder.seed(static_cast<VertexIndex>(n), static_cast<VertexIndex>(n + 1),
               static_cast<VertexIndex>(n + 2));
  for (VertexIndex i = 0; i < n; ++i) builder.insert_point(i);
  for (std::size_t i = 0; i < hull.size(); ++i)
    builder.insert_constraint(hull[i], hull[(i + 1) % hull.size()], false);
  for (const auto& [a, b] : constraints) {
    if (a >= input.size() || b >= input.size())
      throw TriangulationError("constraint index out of range");
    builder.insert_constraint(remap[a], remap[b], true);
  }
  return builder.finish();
}

} // namespace landcore
