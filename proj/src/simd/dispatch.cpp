#include "kernels_impl.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace landcore::simd {

void SegmentSoA::append(const SegmentSoA& other) {
  ax.insert(ax.end(), other.ax.begin(), other.ax.end());
  ay.insert(ay.end(), other.ay.begin(), other.ay.end());
  bx.insert(bx.end(), other.bx.begin(), other.bx.end());
  by.insert(by.end(), other.by.begin(), other.by.end());
}

std::string_view to_string(Level level) noexcept {
  switch (level) {
  case Level::scalar: return "scalar";
  case Level::avx2: return "avx2";
  }
  return "unknown";
}

namespace {

constexpr Kernels kScalar{detail::locate_points_scalar, detail::min_dist2_scalar,
                          detail::any_proper_crossing_scalar};

#if defined(LANDCORE_HAVE_AVX2_KERNELS)
constexpr Kernels kAvx2{detail::locate_points_avx2, detail::min_dist2_avx2,
                        detail::any_proper_crossing_avx2};
#endif

Level detect_default() noexcept {
  if (const char* forced = std::getenv("LANDCORE_SIMD")) {
    if (std::string(forced) == "scalar") return Level::scalar;
  }
  return level_available(Level::avx2) ? Level::avx2 : Level::scalar;
}

std::atomic<Level>& active_slot() {
  static std::atomic<Level> slot{detect_default()};
  return slot;
}

} // namespace

bool level_available(Level level) noexcept {
  switch (level) {
  case Level::scalar: return true;
  case Level::avx2:
#if defined(LANDCORE_HAVE_AVX2_KERNELS)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
  }
  return false;
}

const Kernels& kernels(Level level) {
  if (!level_available(level))
    throw std::invalid_argument("SIMD level not available: " + std::string(to_string(level)));
#if defined(LANDCORE_HAVE_AVX2_KERNELS)
  if (level == Level::avx2) return kAvx2;
#endif
  return kScalar;
}

const Kernels& kernels() { return kernels(active_level()); }

Level active_level() noexcept { return active_slot().load(std::memory_order_relaxed); }

void set_active_level(Level level) {
  if (!level_available(level))
    throw std::invalid_argument("SIMD level not available: " + std::string(to_string(level)));
  active_slot().store(level, std::memory_order_relaxed);
}

} // namespace landcore::simd
