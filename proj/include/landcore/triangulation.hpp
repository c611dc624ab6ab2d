#pragma once

#include "landcore/geometry.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace landcore {

using VertexIndex = std::uint32_t;
using IndexPair = std::pair<VertexIndex, VertexIndex>;

struct Triangulation {
  std::vector<Point2> points;
  // Counter-clockwise vertex triples.
  std::vector<std::array<VertexIndex, 3>> triangles;
  // Normalized (lo, hi) pairs, sorted. Constraints that passed through
  // other input points appear split at those points.
  std::vector<IndexPair> constrained_edges;
  // Per-triangle region index into the source CostMap, -1 where the
  // default weight applies. Empty for plain point triangulations.
  std::vector<int> triangle_region;

  // Sorted unique (lo, hi) edges of all triangles.
  std::vector<IndexPair> edges() const;
};

// Constrained Delaunay triangulation of `points` honouring `constraints`
// (index pairs into `points`). Exact duplicate points are merged.
// Constraints must not cross each other. Throws TriangulationError when
// the points are all collinear or constraints cross.
Triangulation triangulate_points(std::span<const Point2> points,
                                 std::span<const IndexPair> constraints = {});

// Incircle determinant: > 0 when d lies strictly inside the circle through
// the counter-clockwise triangle abc.
double incircle(Point2 a, Point2 b, Point2 c, Point2 d) noexcept;

} // namespace landcore
