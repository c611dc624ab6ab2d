// AVX2 variants. Only the functions carrying the avx2 target attribute use
// AVX2 encodings, so shared inline helpers stay baseline; dispatch must
// confirm CPU support before calling any of them.

#include "kernels_impl.hpp"

#if defined(LANDCORE_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <limits>

namespace landcore::simd::detail {

#define LANDCORE_AVX2 __attribute__((target("avx2")))

// Four points per lane group, edges in the outer loop.
LANDCORE_AVX2 void locate_points_avx2(std::span<const double> px, std::span<const double> py,
                        const SegmentSoA& ring, std::span<Location> out) {
  const std::size_t n = ring.size();
  const std::size_t count = px.size();
  const __m256d tol = _mm256_set1_pd(kBoundaryTolerance);
  const __m256d tol2 = _mm256_set1_pd(kBoundaryTolerance * kBoundaryTolerance);

  std::size_t p = 0;
  for (; p + 4 <= count; p += 4) {
    const __m256d x = _mm256_loadu_pd(px.data() + p);
    const __m256d y = _mm256_loadu_pd(py.data() + p);
    __m256d boundary = _mm256_setzero_pd();
    __m256d parity = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; ++i) {
      const __m256d ax = _mm256_set1_pd(ring.ax[i]);
      const __m256d ay = _mm256_set1_pd(ring.ay[i]);
      const __m256d bx = _mm256_set1_pd(ring.bx[i]);
      const __m256d by = _mm256_set1_pd(ring.by[i]);
      const __m256d dx = _mm256_sub_pd(bx, ax);
      const __m256d dy = _mm256_sub_pd(by, ay);
      const __m256d rx = _mm256_sub_pd(x, ax);
      const __m256d ry = _mm256_sub_pd(y, ay);
      const __m256d cross = _mm256_sub_pd(_mm256_mul_pd(dx, ry), _mm256_mul_pd(dy, rx));
      const __m256d len2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
      const __m256d near_line =
          _mm256_cmp_pd(_mm256_mul_pd(cross, cross), _mm256_mul_pd(tol2, len2), _CMP_LE_OQ);
      const __m256d lo_x = _mm256_sub_pd(_mm256_min_pd(ax, bx), tol);
      const __m256d hi_x = _mm256_add_pd(_mm256_max_pd(ax, bx), tol);
      const __m256d lo_y = _mm256_sub_pd(_mm256_min_pd(ay, by), tol);
      const __m256d hi_y = _mm256_add_pd(_mm256_max_pd(ay, by), tol);
      __m256d in_box = _mm256_and_pd(_mm256_cmp_pd(x, lo_x, _CMP_GE_OQ),
                                     _mm256_cmp_pd(x, hi_x, _CMP_LE_OQ));
      in_box = _mm256_and_pd(in_box, _mm256_cmp_pd(y, lo_y, _CMP_GE_OQ));
      in_box = _mm256_and_pd(in_box, _mm256_cmp_pd(y, hi_y, _CMP_LE_OQ));
      boundary = _mm256_or_pd(boundary, _mm256_and_pd(near_line, in_box));

      const __m256d a_above = _mm256_cmp_pd(ay, y, _CMP_GT_OQ);
      const __m256d b_above = _mm256_cmp_pd(by, y, _CMP_GT_OQ);
      const __m256d straddle = _mm256_xor_pd(a_above, b_above);
      const __m256d xint = _mm256_add_pd(_mm256_div_pd(_mm256_mul_pd(dx, ry), dy), ax);
      const __m256d left = _mm256_cmp_pd(x, xint, _CMP_LT_OQ);
      parity = _mm256_xor_pd(parity, _mm256_and_pd(straddle, left));
    }
    const int bmask = _mm256_movemask_pd(boundary);
    const int pmask = _mm256_movemask_pd(parity);
    for (int lane = 0; lane < 4; ++lane) {
      if (bmask & (1 << lane))
        out[p + lane] = Location::boundary;
      else
        out[p + lane] = (pmask & (1 << lane)) ? Location::inside : Location::outside;
    }
  }
  if (p < count)
    locate_points_scalar(px.subspan(p), py.subspan(p), ring, out.subspan(p));
}

LANDCORE_AVX2 double min_dist2_avx2(double px, double py, const SegmentSoA& segments) {
  const std::size_t n = segments.size();
  const __m256d x = _mm256_set1_pd(px);
  const __m256d y = _mm256_set1_pd(py);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ax = _mm256_loadu_pd(segments.ax.data() + i);
    const __m256d ay = _mm256_loadu_pd(segments.ay.data() + i);
    const __m256d bx = _mm256_loadu_pd(segments.bx.data() + i);
    const __m256d by = _mm256_loadu_pd(segments.by.data() + i);
    const __m256d dx = _mm256_sub_pd(bx, ax);
    const __m256d dy = _mm256_sub_pd(by, ay);
    const __m256d rx = _mm256_sub_pd(x, ax);
    const __m256d ry = _mm256_sub_pd(y, ay);
    const __m256d len2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d dot = _mm256_add_pd(_mm256_mul_pd(rx, dx), _mm256_mul_pd(ry, dy));
    const __m256d positive = _mm256_cmp_pd(len2, zero, _CMP_GT_OQ);
    __m256d t = _mm256_blendv_pd(zero, _mm256_div_pd(dot, len2), positive);
    t = _mm256_min_pd(one, _mm256_max_pd(zero, t));
    const __m256d ex = _mm256_sub_pd(x, _mm256_add_pd(ax, _mm256_mul_pd(t, dx)));
    const __m256d ey = _mm256_sub_pd(y, _mm256_add_pd(ay, _mm256_mul_pd(t, dy)));
    best = _mm256_min_pd(best, _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double result = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  for (; i < n; ++i)
    result = std::min(result, dist2_step(px, py, segments.ax[i], segments.ay[i],
                                         segments.bx[i], segments.by[i]));
  return result;
}

namespace {

LANDCORE_AVX2 inline __m256d opposite_signs_pd(__m256d a, __m256d b) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d pos_neg = _mm256_and_pd(_mm256_cmp_pd(a, zero, _CMP_GT_OQ),
                                        _mm256_cmp_pd(b, zero, _CMP_LT_OQ));
  const __m256d neg_pos = _mm256_and_pd(_mm256_cmp_pd(a, zero, _CMP_LT_OQ),
                                        _mm256_cmp_pd(b, zero, _CMP_GT_OQ));
  return _mm256_or_pd(pos_neg, neg_pos);
}

} // namespace

LANDCORE_AVX2 bool any_proper_crossing_avx2(double p0x, double p0y, double p1x, double p1y,
                              const SegmentSoA& segments) {
  const std::size_t n = segments.size();
  const __m256d qx0 = _mm256_set1_pd(p0x);
  const __m256d qy0 = _mm256_set1_pd(p0y);
  const __m256d qx1 = _mm256_set1_pd(p1x);
  const __m256d qy1 = _mm256_set1_pd(p1y);
  const __m256d ux = _mm256_sub_pd(qx1, qx0);
  const __m256d uy = _mm256_sub_pd(qy1, qy0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ax = _mm256_loadu_pd(segments.ax.data() + i);
    const __m256d ay = _mm256_loadu_pd(segments.ay.data() + i);
    const __m256d bx = _mm256_loadu_pd(segments.bx.data() + i);
    const __m256d by = _mm256_loadu_pd(segments.by.data() + i);
    const __m256d vx = _mm256_sub_pd(bx, ax);
    const __m256d vy = _mm256_sub_pd(by, ay);
    const __m256d o1 = _mm256_sub_pd(_mm256_mul_pd(ux, _mm256_sub_pd(ay, qy0)),
                                     _mm256_mul_pd(uy, _mm256_sub_pd(ax, qx0)));
    const __m256d o2 = _mm256_sub_pd(_mm256_mul_pd(ux, _mm256_sub_pd(by, qy0)),
                                     _mm256_mul_pd(uy, _mm256_sub_pd(bx, qx0)));
    const __m256d o3 = _mm256_sub_pd(_mm256_mul_pd(vx, _mm256_sub_pd(qy0, ay)),
                                     _mm256_mul_pd(vy, _mm256_sub_pd(qx0, ax)));
    const __m256d o4 = _mm256_sub_pd(_mm256_mul_pd(vx, _mm256_sub_pd(qy1, ay)),
                                     _mm256_mul_pd(vy, _mm256_sub_pd(qx1, ax)));
    const __m256d hit = _mm256_and_pd(opposite_signs_pd(o1, o2), opposite_signs_pd(o3, o4));
    if (_mm256_movemask_pd(hit) != 0) return true;
  }
  for (; i < n; ++i)
    if (crossing_step(p0x, p0y, p1x, p1y, segments.ax[i], segments.ay[i],
                      segments.bx[i], segments.by[i]))
      return true;
  return false;
}

} // namespace landcore::simd::detail

#endif
