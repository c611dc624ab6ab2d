#include "kernels_impl.hpp"

#include <limits>

namespace landcore::simd::detail {

void locate_points_scalar(std::span<const double> px, std::span<const double> py,
                          const SegmentSoA& ring, std::span<Location> out) {
  const std::size_t n = ring.size();
  for (std::size_t p = 0; p < px.size(); ++p) {
    LocateAccum acc;
    for (std::size_t i = 0; i < n; ++i)
      locate_step(px[p], py[p], ring.ax[i], ring.ay[i], ring.bx[i], ring.by[i], acc);
    out[p] = locate_result(acc);
  }
}

double min_dist2_scalar(double px, double py, const SegmentSoA& segments) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < segments.size(); ++i)
    best = std::min(best, dist2_step(px, py, segments.ax[i], segments.ay[i],
                                     segments.bx[i], segments.by[i]));
  return best;
}

bool any_proper_crossing_scalar(double p0x, double p0y, double p1x, double p1y,
                                const SegmentSoA& segments) {
  for (std::size_t i = 0; i < segments.size(); ++i)
    if (crossing_step(p0x, p0y, p1x, p1y, segments.ax[i], segments.ay[i],
                      segments.bx[i], segments.by[i]))
      return true;
  return false;
}

} // namespace landcore::simd::detail
