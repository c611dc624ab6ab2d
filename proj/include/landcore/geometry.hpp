#pragma once

// Planar geometry in local meter coordinates.
//
// Polyline2, Ring and Polygon2 validate their invariants on construction
// and are immutable afterwards, so every operation below can assume valid
// input. Each also caches its boundary as a SegmentSoA for the batch
// kernels in simd.hpp.

#include "landcore/simd.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace landcore {

// Vertex identity tolerance in meters.
inline constexpr double kSnapTolerance = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double k, Point2 a) { return {k * a.x, k * a.y}; }

inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double distance(Point2 a, Point2 b) { return std::hypot(b.x - a.x, b.y - a.y); }

// Twice the signed area of triangle abc; positive when counter-clockwise.
inline double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

bool is_finite(Point2 p) noexcept;

struct Box2 {
  Point2 min;
  Point2 max;

  Box2() = default;
  // Throws ValidationError unless min <= max componentwise.
  Box2(Point2 lo, Point2 hi);

  static Box2 of_point(Point2 p) { return Box2(p, p); }

  double width() const noexcept { return max.x - min.x; }
  double height() const noexcept { return max.y - min.y; }
  double area() const noexcept { return width() * height(); }
  Point2 center() const noexcept { return {0.5 * (min.x + max.x), 0.5 * (min.y + max.y)}; }

  bool contains(Point2 p) const noexcept;
  bool contains(const Box2& other) const noexcept;
  void expand(Point2 p) noexcept;
  void expand(const Box2& other) noexcept;
  Box2 inflated(double margin) const;

  friend bool operator==(const Box2&, const Box2&) = default;
};

// Closed-interval overlap on both axes; touching boxes overlap.
bool boxes_overlap(const Box2& a, const Box2& b) noexcept;

Box2 bbox(std::span<const Point2> points);

class Polyline2 {
public:
  // Throws ValidationError for < 2 vertices, consecutive duplicates or
  // non-finite coordinates.
  explicit Polyline2(std::vector<Point2> vertices);

  std::span<const Point2> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const simd::SegmentSoA& segments() const noexcept { return segments_; }

  friend bool operator==(const Polyline2& a, const Polyline2& b) {
    return a.vertices_ == b.vertices_;
  }

private:
  std::vector<Point2> vertices_;
  simd::SegmentSoA segments_;
};

// Implicitly closed ring. A repeated closing vertex is dropped on input.
class Ring {
public:
  // Throws ValidationError for < 3 vertices, zero area, self-intersection
  // or non-finite coordinates.
  explicit Ring(std::vector<Point2> vertices);

  std::span<const Point2> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const simd::SegmentSoA& segments() const noexcept { return segments_; }

  // Shoelace area; positive for counter-clockwise rings.
  double signed_area() const noexcept;
  bool is_ccw() const noexcept { return signed_area() > 0.0; }
  Ring reversed() const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.vertices_ == b.vertices_; }

private:
  std::vector<Point2> vertices_;
  simd::SegmentSoA segments_;
};

class Polygon2 {
public:
  // Throws ValidationError unless every island lies strictly inside the
  // outer ring and islands are pairwise disjoint.
  explicit Polygon2(Ring outer, std::vector<Ring> islands = {});

  const Ring& outer() const noexcept { return outer_; }
  std::span<const Ring> islands() const noexcept { return islands_; }
  std::size_t ring_count() const noexcept { return 1 + islands_.size(); }
  std::size_t vertex_count() const noexcept;

  // All boundary segments, outer ring first.
  const simd::SegmentSoA& segments() const noexcept { return segments_; }

  friend bool operator==(const Polygon2& a, const Polygon2& b) {
    return a.outer_ == b.outer_ && a.islands_ == b.islands_;
  }

private:
  Ring outer_;
  std::vector<Ring> islands_;
  simd::SegmentSoA segments_;
};

double area(const Ring& ring) noexcept;
double area(const Polygon2& polygon) noexcept;
double length(const Polyline2& line) noexcept;

Box2 bbox(const Ring& ring);
Box2 bbox(const Polygon2& polygon);
Box2 bbox(const Polyline2& line);

// Boundary points count as inside.
bool point_in_ring(Point2 q, const Ring& ring);
bool point_in_polygon(Point2 q, const Polygon2& polygon);
simd::Location locate(Point2 q, const Ring& ring);
simd::Location locate(Point2 q, const Polygon2& polygon);

// Batch containment through the active SIMD kernels; out[i] is nonzero iff
// (xs[i], ys[i]) lies in the closed polygon.
void points_in_polygon(std::span<const double> xs, std::span<const double> ys,
                       const Polygon2& polygon, std::span<unsigned char> out);

double point_segment_distance(Point2 q, Point2 a, Point2 b) noexcept;

// Closed segments share at least one point.
bool segments_intersect(Point2 p0, Point2 p1, Point2 q0, Point2 q1) noexcept;

// 0 when the polyline meets the closed polygon region, otherwise the
// smallest distance between the polyline and the polygon boundary.
double min_dist_polygon_polyline(const Polygon2& polygon, const Polyline2& line);

// Heuristic planar-partition check: true when the interiors of a and b
// share area (a vertex strictly inside the other, a proper boundary
// crossing, or an edge whose interior side lies inside the other).
bool interiors_overlap(const Polygon2& a, const Polygon2& b);

// Area of ring/polygon ∩ box (Sutherland-Hodgman against the box edges).
double clipped_area(const Ring& ring, const Box2& box);
double clipped_area(const Polygon2& polygon, const Box2& box);

Polygon2 translate(const Polygon2& polygon, Point2 offset);
Polygon2 scale(const Polygon2& polygon, double factor);

} // namespace landcore
