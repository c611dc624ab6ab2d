#pragma once

// Static SVG output of polygons, polylines, a least-cost path and strata.

#include "landcore/geometry.hpp"
#include "landcore/stratification.hpp"

#include <optional>
#include <string>
#include <vector>

namespace landcore {

struct Scene {
  std::vector<Polygon2> polygons;
  std::vector<Polyline2> polylines;
  std::vector<Point2> path;      // drawn over everything else when nonempty
  std::vector<Stratum> strata;   // drawn underneath as filled blocks
  std::optional<Box2> extent;    // defaults to the bbox of the content

  bool empty() const noexcept {
    return polygons.empty() && polylines.empty() && path.empty() && strata.empty();
  }
};

// Maps data coordinates to SVG user units. The longer data side spans the
// fixed width less margins; y points down.
class Viewport {
public:
  static constexpr double kWidth = 800.0;
  static constexpr double kMargin = 10.0;

  explicit Viewport(const Box2& data);

  double width() const noexcept { return kWidth; }
  double height() const noexcept { return height_; }
  Point2 to_screen(Point2 p) const noexcept;
  Point2 to_data(Point2 s) const noexcept;

private:
  Box2 data_;
  double scale_;
  double height_;
};

Box2 scene_extent(const Scene& scene);

// Throws ValidationError for an empty scene.
std::string render_svg(const Scene& scene);

} // namespace landcore
