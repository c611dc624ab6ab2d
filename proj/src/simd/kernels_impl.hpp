#pragma once

#include "landcore/simd.hpp"

#include <algorithm>

namespace landcore::simd::detail {

// Per-element bodies shared by the scalar kernels and the SIMD tails so
// both paths evaluate the identical expression sequence.
namespace {

struct LocateAccum {
  bool boundary = false;
  bool parity = false;
};

inline void locate_step(double px, double py, double ax, double ay, double bx,
                        double by, LocateAccum& acc) noexcept {
  const double tol = kBoundaryTolerance;
  const double dx = bx - ax;
  const double dy = by - ay;
  const double rx = px - ax;
  const double ry = py - ay;
  const double cross = dx * ry - dy * rx;
  const double len2 = dx * dx + dy * dy;
  const bool near_line = cross * cross <= (tol * tol) * len2;
  const bool in_box = px >= std::min(ax, bx) - tol && px <= std::max(ax, bx) + tol &&
                      py >= std::min(ay, by) - tol && py <= std::max(ay, by) + tol;
  acc.boundary = acc.boundary || (near_line && in_box);
  if ((ay > py) != (by > py)) {
    const double xint = dx * ry / dy + ax;
    if (px < xint) acc.parity = !acc.parity;
  }
}

inline Location locate_result(const LocateAccum& acc) noexcept {
  if (acc.boundary) return Location::boundary;
  return acc.parity ? Location::inside : Location::outside;
}

inline double dist2_step(double px, double py, double ax, double ay, double bx,
                         double by) noexcept {
  const double dx = bx - ax;
  const double dy = by - ay;
  const double rx = px - ax;
  const double ry = py - ay;
  const double len2 = dx * dx + dy * dy;
  const double dot = rx * dx + ry * dy;
  double t = len2 > 0.0 ? dot / len2 : 0.0;
  t = std::min(1.0, std::max(0.0, t));
  const double ex = px - (ax + t * dx);
  const double ey = py - (ay + t * dy);
  return ex * ex + ey * ey;
}

inline bool opposite_signs(double a, double b) noexcept {
  return (a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0);
}

inline bool crossing_step(double p0x, double p0y, double p1x, double p1y, double ax,
                          double ay, double bx, double by) noexcept {
  const double ux = p1x - p0x;
  const double uy = p1y - p0y;
  const double vx = bx - ax;
  const double vy = by - ay;
  const double o1 = ux * (ay - p0y) - uy * (ax - p0x);
  const double o2 = ux * (by - p0y) - uy * (bx - p0x);
  const double o3 = vx * (p0y - ay) - vy * (p0x - ax);
  const double o4 = vx * (p1y - ay) - vy * (p1x - ax);
  return opposite_signs(o1, o2) && opposite_signs(o3, o4);
}

} // namespace

void locate_points_scalar(std::span<const double> px, std::span<const double> py,
                          const SegmentSoA& ring, std::span<Location> out);
double min_dist2_scalar(double px, double py, const SegmentSoA& segments);
bool any_proper_crossing_scalar(double p0x, double p0y, double p1x, double p1y,
                                const SegmentSoA& segments);

#if defined(__x86_64__) || defined(_M_X64)
#define LANDCORE_HAVE_AVX2_KERNELS 1
void locate_points_avx2(std::span<const double> px, std::span<const double> py,
                        const SegmentSoA& ring, std::span<Location> out);
double min_dist2_avx2(double px, double py, const SegmentSoA& segments);
bool any_proper_crossing_avx2(double p0x, double p0y, double p1x, double p1y,
                              const SegmentSoA& segments);
#endif

} // namespace landcore::simd::detail
