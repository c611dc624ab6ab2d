#pragma once

// Data-parallel inner loops shared by the geometry predicates.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2
// variant chosen at runtime. Variants perform the same IEEE operations in
// the same order per element, so their results are bit-identical; the
// equivalence tests rely on that.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace landcore::simd {

// Boundary tolerance for point location, in meters.
inline constexpr double kBoundaryTolerance = 1e-9;

// Structure-of-arrays segment list: segment i runs (ax[i], ay[i]) -> (bx[i], by[i]).
struct SegmentSoA {
  std::vector<double> ax, ay, bx, by;

  std::size_t size() const noexcept { return ax.size(); }
  bool empty() const noexcept { return ax.empty(); }
  void reserve(std::size_t n) {
    ax.reserve(n);
    ay.reserve(n);
    bx.reserve(n);
    by.reserve(n);
  }
  void push_back(double x0, double y0, double x1, double y1) {
    ax.push_back(x0);
    ay.push_back(y0);
    bx.push_back(x1);
    by.push_back(y1);
  }
  void append(const SegmentSoA& other);
};

enum class Location : std::uint8_t { outside = 0, boundary = 1, inside = 2 };

enum class Level { scalar, avx2 };

std::string_view to_string(Level level) noexcept;

struct Kernels {
  // Locate each point relative to the closed ring given as its edge list.
  // out.size() must equal px.size() == py.size().
  void (*locate_points)(std::span<const double> px, std::span<const double> py,
                        const SegmentSoA& ring, std::span<Location> out);
  // Squared distance from (px, py) to the nearest segment; +inf if empty.
  double (*min_dist2)(double px, double py, const SegmentSoA& segments);
  // True if segment p0-p1 properly crosses (interior to interior) any segment.
  bool (*any_proper_crossing)(double p0x, double p0y, double p1x, double p1y,
                              const SegmentSoA& segments);
};

bool level_available(Level level) noexcept;

// Kernels for a specific level; throws std::invalid_argument if the CPU
// cannot run it.
const Kernels& kernels(Level level);

// Kernels for the active level. The active level defaults to the best
// available one; LANDCORE_SIMD=scalar forces the reference path.
const Kernels& kernels();

Level active_level() noexcept;
void set_active_level(Level level);

} // namespace landcore::simd
