#include <atomic>
#include <stdexcept>

#include "conelab/kernels.hpp"

namespace conelab {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

SimdLevel detect() { return cpu_has_avx2() ? SimdLevel::avx2 : SimdLevel::scalar; }

std::atomic<SimdLevel> g_level{detect()};

void check_rect(const PointsSoA& pts) {
  if (pts.y.size() != pts.x.size() || pts.z.size() != pts.x.size())
    throw std::invalid_argument("PointsSoA arrays must have equal length");
}

}  // namespace

SimdLevel active_simd_level() { return g_level.load(std::memory_order_relaxed); }

const char* simd_level_name(SimdLevel level) {
  return level == SimdLevel::avx2 ? "avx2" : "scalar";
}

void force_simd_level(SimdLevel level) {
  if (level == SimdLevel::avx2 && !cpu_has_avx2()) level = SimdLevel::scalar;
  g_level.store(level, std::memory_order_relaxed);
}

void eval_batch(const CompiledPoly& p, const PointsSoA& pts, std::span<double> out) {
  check_rect(pts);
  if (out.size() < pts.size()) throw std::invalid_argument("eval_batch: output too small");
#if defined(__x86_64__) || defined(__i386__)
  if (active_simd_level() == SimdLevel::avx2) {
    avx2_kernels::eval_batch(p, pts, out);
    return;
  }
#endif
  scalar_kernels::eval_batch(p, pts, out);
}

std::size_t min_dist2(const PointsSoA& pts, const double* c, std::size_t skip,
                      double* dist2_out) {
  check_rect(pts);
#if defined(__x86_64__) || defined(__i386__)
  if (active_simd_level() == SimdLevel::avx2)
    return avx2_kernels::min_dist2(pts, c, skip, dist2_out);
#endif
  return scalar_kernels::min_dist2(pts, c, skip, dist2_out);
}

std::size_t max_dot(const PointsSoA& pts, const double* u, double* value_out) {
  check_rect(pts);
#if defined(__x86_64__) || defined(__i386__)
  if (active_simd_level() == SimdLevel::avx2)
    return avx2_kernels::max_dot(pts, u, value_out);
#endif
  return scalar_kernels::max_dot(pts, u, value_out);
}

}  // namespace conelab
