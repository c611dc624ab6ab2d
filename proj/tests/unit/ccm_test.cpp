#include "landcore/ccm.hpp"
#include "landcore/error.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace landcore;

namespace {

Polygon2 rect(double x0, double y0, double x1, double y1) {
  return Polygon2(Ring({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}));
}

CostMap refraction_map() {
  return CostMap({{rect(0, 0, 50, 100), 1.0}, {rect(50, 0, 100, 100), 2.0}}, Box2({0, 0}, {100, 100}));
}

// Two-medium optimum from (25, 25) to (75, 75) across x = 50, by golden
// section on the crossing height.
double refraction_optimum() {
  const auto f = [](double y) { return std::hypot(25.0, y - 25.0) + 2.0 * std::hypot(25.0, 75.0 - y); };
  double lo = 25, hi = 75;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int i = 0; i < 200; ++i) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    if (f(a) < f(b))
      hi = b;
    else
      lo = a;
  }
  return f(0.5 * (lo + hi));
}

double path_cost(const CostMap& map, const std::vector<Point2>& path) {
  double c = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    // Fine sampling of the weight along each leg.
    const int n = 2000;
    const double len = distance(path[i], path[i + 1]);
    for (int k = 0; k < n; ++k) {
      const double u = (k + 0.5) / n;
      c += len / n * map.weight_at(path[i] + u * (path[i + 1] - path[i]));
    }
  }
  return c;
}

} // namespace

TEST_SUITE("ccm") {

TEST_CASE("steiner sequence is nested dyadic") {
  const std::vector<double> want{0.5, 0.25, 0.75, 0.125, 0.625, 0.375, 0.875, 0.0625};
  for (std::size_t k = 1; k <= want.size(); ++k) CHECK(steiner_fraction(k) == want[k - 1]);
  CHECK_THROWS(steiner_fraction(0));
}

TEST_CASE("method names") {
  CHECK(PathMethod{PathMethod::Kind::raster, 8}.name() == "RASTER-8");
  CHECK(PathMethod{PathMethod::Kind::vector, 4}.name() == "VECTOR(4)");
  CHECK(connectivity_from_int(16) == Connectivity::sixteen);
  CHECK_THROWS_AS(connectivity_from_int(5), ValidationError);
}

TEST_CASE("cost map validation") {
  const Box2 ext({0, 0}, {10, 10});
  CHECK_THROWS_AS(CostMap({{rect(0, 0, 5, 5), 0.0}}, ext), ValidationError);
  CHECK_THROWS_AS(CostMap({{rect(0, 0, 5, 5), -1.0}}, ext), ValidationError);
  CHECK_THROWS_AS(CostMap({{rect(5, 5, 15, 8), 1.0}}, ext), ValidationError);
  CHECK_THROWS_AS(CostMap({{rect(0, 0, 6, 6), 1.0}, {rect(5, 5, 8, 8), 2.0}}, ext), ValidationError);
  CHECK_THROWS_AS(CostMap({}, Box2({0, 0}, {0, 10})), ValidationError);
  CHECK_NOTHROW(CostMap({{rect(0, 0, 5, 5), 1.0}, {rect(5, 0, 10, 5), kInfiniteWeight}}, ext));
  const CostMap m({{rect(0, 0, 5, 5), 3.0}}, ext, 1.5);
  CHECK(m.weight_at({1, 1}) == 3.0);
  CHECK(m.weight_at({7, 7}) == 1.5);
  CHECK(m.scaled(2).weight_at({1, 1}) == 6.0);
  CHECK(m.scaled(2).weight_at({7, 7}) == 3.0);
}

TEST_CASE("rasterize agrees with the winding oracle at cell centres") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const auto star = gen::star(rng, {50, 50}, 15, 45, gen::uniform_int(rng, 4, 12));
    const CostMap map({{Polygon2(Ring(star)), 4.0}}, Box2({0, 0}, {100, 100}));
    const double cs = gen::uniform(rng, 1.5, 7);
    const CostGrid grid = rasterize(map, cs);
    CHECK(grid.ncols() == static_cast<std::size_t>(std::ceil(100 / cs - 1e-9)));
    for (std::size_t r = 0; r < grid.nrows(); ++r)
      for (std::size_t c = 0; c < grid.ncols(); ++c) {
        const Point2 p = grid.center(c, r);
        const bool in = oracle::winding_number(p, star) != 0;
        CHECK(grid.weight(c, r) == (in ? 4.0 : 1.0));
      }
  }
}

TEST_CASE("raster Dijkstra equals Bellman-Ford") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t nc = gen::uniform_int(rng, 2, 14), nr = gen::uniform_int(rng, 2, 14);
    std::vector<double> w(nc * nr);
    for (double& x : w) x = gen::uniform(rng, 0, 1) < 0.15 ? kInfiniteWeight : gen::uniform(rng, 0.5, 5);
    w.front() = 1;
    w.back() = 1;
    const CostGrid grid({0, 0}, 2.0, nc, nr, w);
    const Point2 s = grid.center(0, 0), t = grid.center(nc - 1, nr - 1);
    for (Connectivity c : {Connectivity::four, Connectivity::eight, Connectivity::sixteen}) {
      const PathResult r = raster_path(grid, s, t, c);
      const double bf = oracle::bellman_ford(grid, 0, nc * nr - 1, static_cast<int>(c));
      if (std::isinf(bf)) {
        CHECK_FALSE(r.found());
      } else {
        REQUIRE(r.found());
        CHECK(r.total_cost == doctest::Approx(bf).epsilon(1e-12));
        CHECK(r.vertices.front() == s);
        CHECK(r.vertices.back() == t);
      }
    }
  }
}

TEST_CASE("raster endpoints") {
  const CostGrid grid({0, 0}, 1.0, 3, 3, {1, 1, 1, 1, kInfiniteWeight, 1, 1, 1, 1});
  const PathResult same = raster_path(grid, {0.2, 0.2}, {0.8, 0.7}, Connectivity::eight);
  REQUIRE(same.found());
  CHECK(same.total_cost == 0.0);
  CHECK(same.vertices.size() == 2);
  CHECK_THROWS_AS(raster_path(grid, {1.5, 1.5}, {0.5, 0.5}, Connectivity::eight), ValidationError);
  CHECK_THROWS_AS(raster_path(grid, {-1, 0}, {0.5, 0.5}, Connectivity::eight), ValidationError);
  CHECK(grid.cell_of({3, 3})->col == 2);
}

TEST_CASE("uniform map gives the straight line") {
  const CostMap map({}, Box2({0, 0}, {100, 60}), 2.5);
  const Point2 s{10, 5}, t{90, 47};
  for (std::size_t m : {1u, 3u, 8u}) {
    const PathResult r = vector_path(map, s, t, m);
    REQUIRE(r.found());
    CHECK(r.total_cost == doctest::Approx(2.5 * distance(s, t)).epsilon(1e-12));
    // Intermediate vertices are Steiner points on the segment itself.
    for (const Point2& v : r.vertices) CHECK(std::abs(orient(s, t, v)) < 1e-9 * distance(s, t) * distance(s, t));
  }
  const PathResult zero = vector_path(map, s, s, 2);
  CHECK(zero.total_cost == 0.0);
}

TEST_CASE("refraction approaches the two-medium optimum") {
  const CostMap map = refraction_map();
  const double best = refraction_optimum();
  double last = kInfiniteWeight;
  for (std::size_t m : {1u, 2u, 4u, 8u, 16u}) {
    const PathResult r = vector_path(map, {25, 25}, {75, 75}, m);
    REQUIRE(r.found());
    CHECK(r.total_cost >= best * (1 - 1e-12));
    CHECK(r.total_cost <= last);
    CHECK(path_cost(map, r.vertices) == doctest::Approx(r.total_cost).epsilon(1e-3));
    last = r.total_cost;
  }
  CHECK(last <= best * 1.005);
}

TEST_CASE("vector cost scales with the weights") {
  const CostMap map = refraction_map();
  const double a = vector_path(map, {10, 80}, {90, 15}, 4).total_cost;
  const double b = vector_path(map.scaled(3), {10, 80}, {90, 15}, 4).total_cost;
  CHECK(b == doctest::Approx(3 * a).epsilon(1e-12));
}

TEST_CASE("obstacles") {
  const Polygon2 wall(Ring({{60, 60}, {90, 60}, {90, 90}, {60, 90}}),
                      {Ring({{70, 70}, {70, 80}, {80, 80}, {80, 70}})});
  const CostMap map({{wall, kInfiniteWeight}}, Box2({0, 0}, {100, 100}));
  CHECK_FALSE(vector_path(map, {10, 10}, {75, 75}, 4).found());
  CHECK_FALSE(raster_path(rasterize(map, 2), {10, 10}, {75, 75}, Connectivity::sixteen).found());
  CHECK_THROWS_AS(vector_path(map, {10, 10}, {65, 65}, 4), ValidationError);
  CHECK_THROWS_AS(vector_path(map, {10, 10}, {150, 65}, 4), ValidationError);
  CHECK_THROWS_AS(vector_path(map, {10, 10}, {20, 20}, 0), ValidationError);
  // A detour around a solid block costs more than the straight line.
  const CostMap block({{rect(40, 0, 60, 90), kInfiniteWeight}}, Box2({0, 0}, {100, 100}));
  const PathResult r = vector_path(block, {20, 50}, {80, 50}, 4);
  REQUIRE(r.found());
  const double around = 2 * std::hypot(20.0, 40.0) + 20;
  CHECK(r.total_cost >= around * (1 - 1e-12));
  CHECK(r.total_cost <= around * 1.05);
}

TEST_CASE("convergence report flags") {
  const CostMap map = refraction_map();
  const std::vector<double> cells{5, 2.5};
  const std::vector<Connectivity> conns{Connectivity::sixteen, Connectivity::four, Connectivity::eight};
  const std::vector<std::size_t> ms{1, 8};
  const ConvergenceReport rep = convergence_report(map, {25, 25}, {75, 75}, cells, conns, ms);
  CHECK(rep.rows.size() == cells.size() * conns.size() + ms.size());
  CHECK(rep.raster_monotone);
  CHECK(rep.vector_monotone);
  CHECK(rep.above_best_vector);
  CHECK(rep.rows.front().method.name() == "RASTER-4");
  // A coarse vector solution can sit above a fine raster one; the flag says so.
  const std::vector<std::size_t> coarse{1};
  CHECK_FALSE(convergence_report(map, {25, 25}, {75, 75}, cells, conns, coarse).above_best_vector);
}

}
