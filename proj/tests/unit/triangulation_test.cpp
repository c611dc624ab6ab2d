#include "landcore/error.hpp"
#include "landcore/triangulation.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace landcore;

namespace {

// Circumcircle from the perpendicular-bisector formula in long double.
bool strictly_in_circumcircle(Point2 a, Point2 b, Point2 c, Point2 p) {
  using L = long double;
  const L ax = a.x, ay = a.y, bx = b.x, by = b.y, cx = c.x, cy = c.y;
  const L d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  const L ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d;
  const L uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d;
  const L r2 = (ax - ux) * (ax - ux) + (ay - uy) * (ay - uy);
  const L p2 = (p.x - ux) * (p.x - ux) + (p.y - uy) * (p.y - uy);
  return p2 < r2 * (1 - 1e-9L);
}

// Gift-wrapping hull area.
double hull_area(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Point2> hull;
  std::size_t start = 0, cur = 0;
  do {
    hull.push_back(pts[cur]);
    std::size_t next = (cur + 1) % pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (oracle::is_left(pts[cur], pts[next], pts[i]) < 0) next = i;
    cur = next;
  } while (cur != start && hull.size() <= pts.size());
  return std::abs(oracle::shoelace(hull));
}

double total_area(const Triangulation& t) {
  double s = 0;
  for (const auto& tri : t.triangles) {
    const double a = orient(t.points[tri[0]], t.points[tri[1]], t.points[tri[2]]);
    CHECK(a > 0);
    s += 0.5 * a;
  }
  return s;
}

} // namespace

TEST_SUITE("triangulation") {

TEST_CASE("incircle sign") {
  CHECK(incircle({0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}) > 0);
  CHECK(incircle({0, 0}, {1, 0}, {0, 1}, {2, 2}) < 0);
  CHECK(incircle({0, 0}, {1, 0}, {0, 1}, {1, 1}) == 0);
}

TEST_CASE("random point sets are Delaunay and cover the hull") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Point2> pts;
    const int n = gen::uniform_int(rng, 3, 120);
    for (int i = 0; i < n; ++i) pts.push_back({gen::uniform(rng, 0, 100), gen::uniform(rng, 0, 100)});
    const Triangulation t = triangulate_points(pts);
    CHECK(total_area(t) == doctest::Approx(hull_area(pts)).epsilon(1e-9));
    for (const auto& tri : t.triangles)
      for (std::size_t k = 0; k < t.points.size(); ++k)
        CHECK_FALSE(strictly_in_circumcircle(t.points[tri[0]], t.points[tri[1]], t.points[tri[2]], t.points[k]));
    // Euler: T = 2n - h - 2 for n points with h on the hull.
    CHECK(t.triangles.size() <= 2 * t.points.size() - 5 + 3);
  }
}

TEST_CASE("constraints appear as edges") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Point2> pts{{0, 0}, {100, 0}, {100, 100}, {0, 100}};
    for (int i = 0; i < 40; ++i) pts.push_back({gen::uniform(rng, 1, 99), gen::uniform(rng, 1, 99)});
    // A zig-zag chain of constraints from left to right.
    std::vector<IndexPair> cons;
    VertexIndex prev = 0;
    for (int k = 1; k <= 4; ++k) {
      pts.push_back({k * 20.0, k % 2 ? 70.0 : 30.0});
      const VertexIndex cur = static_cast<VertexIndex>(pts.size() - 1);
      cons.emplace_back(prev, cur);
      prev = cur;
    }
    cons.emplace_back(prev, 2);
    const Triangulation t = triangulate_points(pts, cons);
    const auto edges = t.edges();
    for (const auto& c : t.constrained_edges) CHECK(std::binary_search(edges.begin(), edges.end(), c));
    CHECK(total_area(t) == doctest::Approx(10000).epsilon(1e-12));
    // Each constraint is present whole or split at collinear input points.
    double covered = 0;
    for (const auto& [a, b] : t.constrained_edges) covered += distance(t.points[a], t.points[b]);
    double want = 0;
    for (const auto& [a, b] : cons) want += distance(pts[a], pts[b]);
    CHECK(covered == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("constraint through a collinear point is split") {
  const std::vector<Point2> pts{{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 2}, {1, 3}};
  const std::vector<IndexPair> cons{{0, 2}};
  const Triangulation t = triangulate_points(pts, cons);
  CHECK(t.constrained_edges == std::vector<IndexPair>{{0, 4}, {2, 4}});
}

TEST_CASE("degenerate input") {
  CHECK_THROWS_AS(triangulate_points(std::vector<Point2>{{0, 0}, {1, 1}, {2, 2}}), TriangulationError);
  CHECK_THROWS_AS(triangulate_points(std::vector<Point2>{{0, 0}, {1, 1}}), TriangulationError);
  const std::vector<Point2> square{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  const std::vector<IndexPair> crossing{{0, 2}, {1, 3}};
  CHECK_THROWS_AS(triangulate_points(square, crossing), TriangulationError);
  const std::vector<Point2> dup{{0, 0}, {1, 0}, {0, 1}, {1, 0}};
  CHECK(triangulate_points(dup).triangles.size() == 1);
}

}
