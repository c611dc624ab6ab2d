#include "landcore/geometry.hpp"
#include "landcore/simd.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <cstring>

using namespace landcore;

namespace {

// Ring on a coarse lattice so that many probe points fall exactly on
// vertices and edges.
simd::SegmentSoA lattice_ring(std::mt19937_64& rng) {
  auto pts = gen::star(rng, {8, 8}, 3, 7, gen::uniform_int(rng, 4, 11));
  for (Point2& p : pts) p = {std::round(p.x * 2) / 2, std::round(p.y * 2) / 2};
  simd::SegmentSoA ring;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2 a = pts[i], b = pts[(i + 1) % pts.size()];
    ring.push_back(a.x, a.y, b.x, b.y);
  }
  return ring;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar kernels are always available") {
  CHECK(simd::level_available(simd::Level::scalar));
  CHECK(simd::to_string(simd::Level::scalar) == "scalar");
}

TEST_CASE("avx2 kernels match scalar bit for bit") {
  if (!simd::level_available(simd::Level::avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  const simd::Kernels& ref = simd::kernels(simd::Level::scalar);
  const simd::Kernels& vec = simd::kernels(simd::Level::avx2);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const simd::SegmentSoA ring = lattice_ring(rng);
    const std::size_t n = static_cast<std::size_t>(gen::uniform_int(rng, 0, 67));
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i % 3 == 0) {
        xs[i] = std::round(gen::uniform(rng, 0, 16) * 4) / 4;
        ys[i] = std::round(gen::uniform(rng, 0, 16) * 4) / 4;
      } else {
        xs[i] = gen::uniform(rng, 0, 16);
        ys[i] = gen::uniform(rng, 0, 16);
      }
    }
    std::vector<simd::Location> a(n), b(n);
    ref.locate_points(xs, ys, ring, a);
    vec.locate_points(xs, ys, ring, b);
    CHECK(a == b);

    for (std::size_t i = 0; i < n; ++i) {
      CHECK(same_bits(ref.min_dist2(xs[i], ys[i], ring), vec.min_dist2(xs[i], ys[i], ring)));
      const std::size_t j = (i + 1) % n;
      CHECK(ref.any_proper_crossing(xs[i], ys[i], xs[j], ys[j], ring) ==
            vec.any_proper_crossing(xs[i], ys[i], xs[j], ys[j], ring));
    }
  }
}

TEST_CASE("empty segment lists") {
  const simd::SegmentSoA none;
  for (simd::Level level : {simd::Level::scalar, simd::Level::avx2}) {
    if (!simd::level_available(level)) continue;
    CHECK(std::isinf(simd::kernels(level).min_dist2(1, 2, none)));
    CHECK_FALSE(simd::kernels(level).any_proper_crossing(0, 0, 1, 1, none));
  }
}

TEST_CASE("active level can be switched and results do not change") {
  const simd::Level before = simd::active_level();
  std::mt19937_64 rng(22);
  const Polygon2 poly(Ring(gen::star(rng, {0, 0}, 2, 5, 9)));
  std::vector<double> xs, ys;
  for (int i = 0; i < 257; ++i) {
    xs.push_back(gen::uniform(rng, -6, 6));
    ys.push_back(gen::uniform(rng, -6, 6));
  }
  std::vector<unsigned char> scalar_out(xs.size()), best_out(xs.size());
  simd::set_active_level(simd::Level::scalar);
  CHECK(simd::active_level() == simd::Level::scalar);
  points_in_polygon(xs, ys, poly, scalar_out);
  if (simd::level_available(simd::Level::avx2)) simd::set_active_level(simd::Level::avx2);
  points_in_polygon(xs, ys, poly, best_out);
  CHECK(scalar_out == best_out);
  simd::set_active_level(before);
}

}
