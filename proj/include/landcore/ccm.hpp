#pragma once

// Cross-country movement: least-cost paths over a weighted planar
// subdivision, where cost per meter is uniform inside each region.
//
// Two solvers are provided. The raster solver runs Dijkstra over a cost
// grid with 4, 8 or 16 move directions. The vector solver triangulates the
// subdivision (constrained Delaunay), places m Steiner points on every
// triangulation edge in nested dyadic order and runs Dijkstra over the
// graph joining all nodes that share a triangle. Its cost is an upper
// bound on the continuous optimum and never increases with m.

#include "landcore/geometry.hpp"
#include "landcore/triangulation.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace landcore {

inline constexpr double kInfiniteWeight = std::numeric_limits<double>::infinity();

struct CostRegion {
  Polygon2 region;
  double weight = 1.0; // cost per meter, > 0, or kInfiniteWeight for obstacles
};

class CostMap {
public:
  // Throws ValidationError for non-positive weights, regions leaving the
  // extent, a degenerate extent or overlapping region interiors.
  CostMap(std::vector<CostRegion> regions, Box2 extent, double default_weight = 1.0);

  std::span<const CostRegion> regions() const noexcept { return regions_; }
  const Box2& extent() const noexcept { return extent_; }
  double default_weight() const noexcept { return default_weight_; }

  // First region whose closed area contains p.
  std::optional<std::size_t> region_at(Point2 p) const;
  double weight_at(Point2 p) const;

  // Same map with every weight multiplied by k > 0.
  CostMap scaled(double k) const;

private:
  std::vector<CostRegion> regions_;
  Box2 extent_;
  double default_weight_;
};

class CostGrid {
public:
  // Row 0 is the southern row; weights are row-major.
  CostGrid(Point2 origin, double cell_size, std::size_t ncols, std::size_t nrows,
           std::vector<double> weights);

  Point2 origin() const noexcept { return origin_; }
  double cell_size() const noexcept { return cell_size_; }
  std::size_t ncols() const noexcept { return ncols_; }
  std::size_t nrows() const noexcept { return nrows_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double weight(std::size_t col, std::size_t row) const { return weights_[row * ncols_ + col]; }
  Point2 center(std::size_t col, std::size_t row) const;

  struct Cell {
    std::size_t col;
    std::size_t row;
  };
  // Cell containing p; points on the far edges belong to the last cell.
  std::optional<Cell> cell_of(Point2 p) const;

private:
  Point2 origin_;
  double cell_size_;
  std::size_t ncols_;
  std::size_t nrows_;
  std::vector<double> weights_;
};

enum class Connectivity { four = 4, eight = 8, sixteen = 16 };

Connectivity connectivity_from_int(int n);

struct PathMethod {
  enum class Kind { raster, vector };
  Kind kind = Kind::raster;
  int parameter = 8; // move directions for raster, Steiner points per edge for vector

  std::string name() const; // "RASTER-8", "VECTOR(4)"
  friend bool operator==(const PathMethod&, const PathMethod&) = default;
};

struct PathResult {
  std::vector<Point2> vertices; // empty when no path exists
  double total_cost = kInfiniteWeight;
  PathMethod method;

  bool found() const noexcept { return !vertices.empty(); }
};

// Each cell takes the weight of the first region containing its center.
CostGrid rasterize(const CostMap& map, double cell_size);

// Dijkstra over cell centers. A move between neighbouring cells a and b
// costs center distance × (w(a) + w(b)) / 2; 16-connectivity adds knight
// moves. Throws ValidationError if s or t falls outside the grid or on an
// infinite-weight cell.
PathResult raster_path(const CostGrid& grid, Point2 s, Point2 t, Connectivity connectivity);

// Constrained Delaunay triangulation of the map: extent corners and region
// vertices, with every region boundary and extent side as a constraint.
Triangulation triangulate(const CostMap& map);
Triangulation triangulate(const CostMap& map, std::span<const Point2> extra_points,
                          std::span<const std::pair<Point2, Point2>> extra_segments);

// k-th (1-based) position of the nested dyadic Steiner sequence on [0, 1]:
// 1/2, 1/4, 3/4, 1/8, 5/8, 3/8, 7/8, 1/16, ...
double steiner_fraction(std::size_t k);

PathResult vector_path(const CostMap& map, Point2 s, Point2 t, std::size_t steiner_per_edge);

struct ConvergenceRow {
  PathMethod method;
  double resolution_or_m = 0.0;
  double cost = kInfiniteWeight;
  double runtime_ms = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool raster_monotone = true;  // cost non-increasing as connectivity rises
  bool vector_monotone = true;  // cost non-increasing as m rises
  bool above_best_vector = true; // every cost >= the best vector cost
};

ConvergenceReport convergence_report(const CostMap& map, Point2 s, Point2 t,
                                     std::span<const double> cell_sizes,
                                     std::span<const Connectivity> connectivities,
                                     std::span<const std::size_t> m_values);

} // namespace landcore
