#include "landcore/geometry.hpp"

#include "landcore/error.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace landcore {

bool is_finite(Point2 p) noexcept { return std::isfinite(p.x) && std::isfinite(p.y); }

Box2::Box2(Point2 lo, Point2 hi) : min(lo), max(hi) {
  if (!(lo.x <= hi.x && lo.y <= hi.y))
    throw ValidationError("box minimum exceeds maximum");
}

bool Box2::contains(Point2 p) const noexcept {
  return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
}

bool Box2::contains(const Box2& other) const noexcept {
  return other.min.x >= min.x && other.max.x <= max.x && other.min.y >= min.y &&
         other.max.y <= max.y;
}

void Box2::expand(Point2 p) noexcept {
  min.x = std::min(min.x, p.x);
  min.y = std::min(min.y, p.y);
  max.x = std::max(max.x, p.x);
  max.y = std::max(max.y, p.y);
}

void Box2::expand(const Box2& other) noexcept {
  expand(other.min);
  expand(other.max);
}

Box2 Box2::inflated(double margin) const {
  return Box2({min.x - margin, min.y - margin}, {max.x + margin, max.y + margin});
}

bool boxes_overlap(const Box2& a, const Box2& b) noexcept {
  return a.min.x <= b.max.x && b.min.x <= a.max.x && a.min.y <= b.max.y &&
         b.min.y <= a.max.y;
}

Box2 bbox(std::span<const Point2> points) {
  if (points.empty()) throw ValidationError("bounding box of empty point set");
  Box2 box = Box2::of_point(points.front());
  for (const Point2& p : points.subspan(1)) box.expand(p);
  return box;
}

namespace {

void require_finite(std::span<const Point2> vertices, const char* what) {
  for (const Point2& p : vertices)
    if (!is_finite(p)) throw ValidationError(std::string(what) + " has a non-finite coordinate");
}

bool on_segment(Point2 q, Point2 a, Point2 b) noexcept {
  return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= q.y && q.y <= std::max(a.y, b.y);
}

int sign(double v) noexcept { return (v > 0.0) - (v < 0.0); }

simd::SegmentSoA closed_segments(std::span<const Point2> v) {
  simd::SegmentSoA segs;
  segs.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % v.size()];
    segs.push_back(a.x, a.y, b.x, b.y);
  }
  return segs;
}

// Simple ring: adjacent edges meet only at their shared vertex and
// non-adjacent edges do not meet at all.
bool ring_is_simple(std::span<const Point2> v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a0 = v[i];
    const Point2 a1 = v[(i + 1) % n];
    // Fold-back onto the previous edge.
    const Point2 prev = v[(i + n - 1) % n];
    if (orient(prev, a0, a1) == 0.0 && dot(a1 - a0, prev - a0) > 0.0) return false;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(a0, a1, v[j], v[(j + 1) % n])) return false;
    }
  }
  return true;
}

bool rings_touch(const Ring& a, const Ring& b) {
  const auto va = a.vertices();
  const auto vb = b.vertices();
  for (std::size_t i = 0; i < va.size(); ++i)
    for (std::size_t j = 0; j < vb.size(); ++j)
      if (segments_intersect(va[i], va[(i + 1) % va.size()], vb[j], vb[(j + 1) % vb.size()]))
        return true;
  return false;
}

double shoelace(std::span<const Point2> v) noexcept {
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % v.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

} // namespace

Polyline2::Polyline2(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2)
    throw ValidationError("polyline has " + std::to_string(vertices_.size()) +
                          " vertices (need >= 2)");
  require_finite(vertices_, "polyline");
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (vertices_[i] == vertices_[i - 1])
      throw ValidationError("polyline repeats vertex " + std::to_string(i));
  segments_.reserve(vertices_.size() - 1);
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    segments_.push_back(vertices_[i - 1].x, vertices_[i - 1].y, vertices_[i].x, vertices_[i].y);
}

Ring::Ring(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() > 1 && vertices_.front() == vertices_.back()) vertices_.pop_back();
  if (vertices_.size() < 3)
    throw ValidationError("ring has " + std::to_string(vertices_.size()) +
                          " vertices (need >= 3)");
  require_finite(vertices_, "ring");
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == vertices_[(i + 1) % vertices_.size()])
      throw ValidationError("ring repeats vertex " + std::to_string(i));
  if (shoelace(vertices_) == 0.0) throw ValidationError("ring has zero area");
  if (!ring_is_simple(vertices_)) throw ValidationError("ring is self-intersecting");
  segments_ = closed_segments(vertices_);
}

double Ring::signed_area() const noexcept { return shoelace(vertices_); }

Ring Ring::reversed() const {
  std::vector<Point2> v(vertices_.rbegin(), vertices_.rend());
  return Ring(std::move(v));
}

Polygon2::Polygon2(Ring outer, std::vector<Ring> islands)
    : outer_(std::move(outer)), islands_(std::move(islands)) {
  for (std::size_t i = 0; i < islands_.size(); ++i) {
    const Ring& island = islands_[i];
    for (const Point2& p : island.vertices())
      if (locate(p, outer_) != simd::Location::inside)
        throw ValidationError("island " + std::to_string(i) + " is not strictly inside the outer ring");
    if (rings_touch(island, outer_))
      throw ValidationError("island " + std::to_string(i) + " touches the outer ring");
    for (std::size_t j = 0; j < i; ++j) {
      const Ring& other = islands_[j];
      if (rings_touch(island, other) ||
          locate(island.vertices().front(), other) != simd::Location::outside ||
          locate(other.vertices().front(), island) != simd::Location::outside)
        throw ValidationError("islands " + std::to_string(j) + " and " + std::to_string(i) +
                              " overlap");
    }
  }
  segments_ = outer_.segments();
  for (const Ring& island : islands_) segments_.append(island.segments());
}

std::size_t Polygon2::vertex_count() const noexcept {
  std::size_t n = outer_.size();
  for (const Ring& r : islands_) n += r.size();
  return n;
}

double area(const Ring& ring) noexcept { return std::abs(ring.signed_area()); }

double area(const Polygon2& polygon) noexcept {
  double a = area(polygon.outer());
  for (const Ring& island : polygon.islands()) a -= area(island);
  return a;
}

double length(const Polyline2& line) noexcept {
  const auto v = line.vertices();
  double total = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) total += distance(v[i - 1], v[i]);
  return total;
}

Box2 bbox(const Ring& ring) { return bbox(ring.vertices()); }
Box2 bbox(const Polygon2& polygon) { return bbox(polygon.outer()); }
Box2 bbox(const Polyline2& line) { return bbox(line.vertices()); }

simd::Location locate(Point2 q, const Ring& ring) {
  simd::Location out = simd::Location::outside;
  const double xs[1] = {q.x};
  const double ys[1] = {q.y};
  simd::kernels(simd::Level::scalar).locate_points(std::span<const double>(xs), std::span<const double>(ys), ring.segments(),
                                                  std::span<simd::Location>(&out, 1));
  return out;
}

simd::Location locate(Point2 q, const Polygon2& polygon) {
  const simd::Location outer = locate(q, polygon.outer());
  if (outer != simd::Location::inside) return outer;
  for (const Ring& island : polygon.islands()) {
    const simd::Location l = locate(q, island);
    if (l == simd::Location::boundary) return l;
    if (l == simd::Location::inside) return simd::Location::outside;
  }
  return simd::Location::inside;
}

bool point_in_ring(Point2 q, const Ring& ring) {
  return locate(q, ring) != simd::Location::outside;
}

bool point_in_polygon(Point2 q, const Polygon2& polygon) {
  return locate(q, polygon) != simd::Location::outside;
}

void points_in_polygon(std::span<const double> xs, std::span<const double> ys,
                       const Polygon2& polygon, std::span<unsigned char> out) {
  if (xs.size() != ys.size() || out.size() != xs.size())
    throw ValidationError("points_in_polygon: mismatched span sizes");
  const auto& k = simd::kernels();
  std::vector<simd::Location> outer(xs.size());
  k.locate_points(xs, ys, polygon.outer().segments(), outer);
  for (std::size_t i = 0; i < xs.size(); ++i)
    out[i] = outer[i] != simd::Location::outside;
  std::vector<simd::Location> hole(xs.size());
  for (const Ring& island : polygon.islands()) {
    k.locate_points(xs, ys, island.segments(), hole);
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (hole[i] == simd::Location::inside) out[i] = 0;
  }
}

double point_segment_distance(Point2 q, Point2 a, Point2 b) noexcept {
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  double t = len2 > 0.0 ? dot(q - a, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(q, a + t * d);
}

bool segments_intersect(Point2 p0, Point2 p1, Point2 q0, Point2 q1) noexcept {
  const int o1 = sign(orient(p0, p1, q0));
  const int o2 = sign(orient(p0, p1, q1));
  const int o3 = sign(orient(q0, q1, p0));
  const int o4 = sign(orient(q0, q1, p1));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(q0, p0, p1)) return true;
  if (o2 == 0 && on_segment(q1, p0, p1)) return true;
  if (o3 == 0 && on_segment(p0, q0, q1)) return true;
  if (o4 == 0 && on_segment(p1, q0, q1)) return true;
  return false;
}

double min_dist_polygon_polyline(const Polygon2& polygon, const Polyline2& line) {
  const auto& k = simd::kernels();
  const auto lv = line.vertices();
  for (const Point2& p : lv)
    if (locate(p, polygon) != simd::Location::outside) return 0.0;
  const simd::SegmentSoA& boundary = polygon.segments();
  for (std::size_t i = 1; i < lv.size(); ++i)
    if (k.any_proper_crossing(lv[i - 1].x, lv[i - 1].y, lv[i].x, lv[i].y, boundary)) return 0.0;

  double best = std::numeric_limits<double>::infinity();
  for (const Point2& p : lv) best = std::min(best, k.min_dist2(p.x, p.y, boundary));
  const simd::SegmentSoA& path = line.segments();
  auto scan_ring = [&](const Ring& ring) {
    for (const Point2& p : ring.vertices()) best = std::min(best, k.min_dist2(p.x, p.y, path));
  };
  scan_ring(polygon.outer());
  for (const Ring& island : polygon.islands()) scan_ring(island);
  const double d = std::sqrt(best);
  return d <= kSnapTolerance ? 0.0 : d;
}

namespace {

bool overlaps_one_way(const Polygon2& a, const Polygon2& b) {
  const auto& k = simd::kernels();
  auto scan = [&](const Ring& ring, bool hole) {
    const auto v = ring.vertices();
    const bool ccw = ring.is_ccw() != hole; // interior on the left
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point2 p = v[i];
      const Point2 q = v[(i + 1) % v.size()];
      if (locate(p, b) == simd::Location::inside) return true;
      if (k.any_proper_crossing(p.x, p.y, q.x, q.y, b.segments())) return true;
      const Point2 d = q - p;
      const double len = std::hypot(d.x, d.y);
      const double off = 1e-6 * len;
      Point2 normal{-d.y / len, d.x / len};
      if (!ccw) normal = -1.0 * normal;
      const Point2 probe = 0.5 * (p + q) + off * normal;
      if (locate(probe, b) == simd::Location::inside && locate(probe, a) == simd::Location::inside)
        return true;
    }
    return false;
  };
  if (scan(a.outer(), false)) return true;
  for (const Ring& r : a.islands())
    if (scan(r, true)) return true;
  return false;
}

} // namespace

bool interiors_overlap(const Polygon2& a, const Polygon2& b) {
  if (!boxes_overlap(bbox(a), bbox(b))) return false;
  return overlaps_one_way(a, b) || overlaps_one_way(b, a);
}

namespace {

enum class Side { left, right, bottom, top };

bool keep(Point2 p, Side side, double v) {
  switch (side) {
  case Side::left: return p.x >= v;
  case Side::right: return p.x <= v;
  case Side::bottom: return p.y >= v;
  case Side::top: return p.y <= v;
  }
  return false;
}

Point2 cut(Point2 a, Point2 b, Side side, double v) {
  if (side == Side::left || side == Side::right) {
    const double t = (v - a.x) / (b.x - a.x);
    return {v, a.y + t * (b.y - a.y)};
  }
  const double t = (v - a.y) / (b.y - a.y);
  return {a.x + t * (b.x - a.x), v};
}

std::vector<Point2> clip_side(const std::vector<Point2>& in, Side side, double v) {
  std::vector<Point2> out;
  if (in.empty()) return out;
  out.reserve(in.size() + 4);
  Point2 prev = in.back();
  bool prev_in = keep(prev, side, v);
  for (const Point2& cur : in) {
    const bool cur_in = keep(cur, side, v);
    if (cur_in) {
      if (!prev_in) out.push_back(cut(prev, cur, side, v));
      out.push_back(cur);
    } else if (prev_in) {
      out.push_back(cut(prev, cur, side, v));
    }
    prev = cur;
    prev_in = cur_in;
  }
  return out;
}

} // namespace

double clipped_area(const Ring& ring, const Box2& box) {
  const Box2 rb = bbox(ring);
  if (!boxes_overlap(rb, box)) return 0.0;
  if (box.contains(rb)) return area(ring);
  std::vector<Point2> poly(ring.vertices().begin(), ring.vertices().end());
  poly = clip_side(poly, Side::left, box.min.x);
  poly = clip_side(poly, Side::right, box.max.x);
  poly = clip_side(poly, Side::bottom, box.min.y);
  poly = clip_side(poly, Side::top, box.max.y);
  return std::abs(shoelace(poly));
}

double clipped_area(const Polygon2& polygon, const Box2& box) {
  double a = clipped_area(polygon.outer(), box);
  for (const Ring& island : polygon.islands()) a -= clipped_area(island, box);
  return std::max(0.0, a);
}

namespace {

template <class F>
Ring map_ring(const Ring& r, F&& f) {
  std::vector<Point2> v;
  v.reserve(r.size());
  for (const Point2& p : r.vertices()) v.push_back(f(p));
  return Ring(std::move(v));
}

template <class F>
Polygon2 map_polygon(const Polygon2& polygon, F&& f) {
  std::vector<Ring> islands;
  for (const Ring& r : polygon.islands()) islands.push_back(map_ring(r, f));
  return Polygon2(map_ring(polygon.outer(), f), std::move(islands));
}

} // namespace

Polygon2 translate(const Polygon2& polygon, Point2 offset) {
  return map_polygon(polygon, [&](Point2 p) { return p + offset; });
}

Polygon2 scale(const Polygon2& polygon, double factor) {
  if (!(factor > 0.0)) throw ValidationError("scale factor must be positive");
  return map_polygon(polygon, [&](Point2 p) { return factor * p; });
}

} // namespace landcore
