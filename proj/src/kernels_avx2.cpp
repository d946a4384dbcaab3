// AVX2 variants of the batch kernels. Plain mul/add only (no FMA) and the
// same per-point operation order as the scalar reference, so results match
// bit for bit; the equivalence tests assert exact equality.

#if defined(__AVX2__)

#include <immintrin.h>

#include <limits>

#include "conelab/kernels.hpp"

namespace conelab {
namespace avx2_kernels {

namespace {

inline double reduce_min(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d m = _mm_min_pd(lo, hi);
  __m128d s = _mm_unpackhi_pd(m, m);
  return _mm_cvtsd_f64(_mm_min_sd(m, s));
}

inline double reduce_max(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d m = _mm_max_pd(lo, hi);
  __m128d s = _mm_unpackhi_pd(m, m);
  return _mm_cvtsd_f64(_mm_max_sd(m, s));
}

inline double dist2_one(const PointsSoA& pts, const double* c, std::size_t i) {
  double dx = pts.x[i] - c[0];
  double dy = pts.y[i] - c[1];
  double dz = pts.z[i] - c[2];
  return dx * dx + dy * dy + dz * dz;
}

inline double dot_one(const PointsSoA& pts, const double* u, std::size_t i) {
  double d = pts.x[i] * u[0];
  d += pts.y[i] * u[1];
  d += pts.z[i] * u[2];
  return d;
}

}  // namespace

void eval_batch(const CompiledPoly& p, const PointsSoA& pts, std::span<double> out) {
  const std::size_t n = pts.size();
  const std::size_t n4 = n & ~std::size_t(3);
  __m256d pw0[CompiledPoly::kMaxExp + 1];
  __m256d pw1[CompiledPoly::kMaxExp + 1];
  __m256d pw2[CompiledPoly::kMaxExp + 1];
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d vx = _mm256_loadu_pd(&pts.x[i]);
    __m256d vy = _mm256_loadu_pd(&pts.y[i]);
    __m256d vz = _mm256_loadu_pd(&pts.z[i]);
    pw0[0] = one;
    pw1[0] = one;
    pw2[0] = one;
    for (int e = 1; e <= p.max_exp[0]; ++e) pw0[e] = _mm256_mul_pd(pw0[e - 1], vx);
    for (int e = 1; e <= p.max_exp[1]; ++e) pw1[e] = _mm256_mul_pd(pw1[e - 1], vy);
    for (int e = 1; e <= p.max_exp[2]; ++e) pw2[e] = _mm256_mul_pd(pw2[e - 1], vz);
    __m256d acc = _mm256_setzero_pd();
    for (const auto& t : p.terms) {
      __m256d val = _mm256_set1_pd(t.coeff);
      val = _mm256_mul_pd(val, pw0[t.e[0]]);
      val = _mm256_mul_pd(val, pw1[t.e[1]]);
      val = _mm256_mul_pd(val, pw2[t.e[2]]);
      acc = _mm256_add_pd(acc, val);
    }
    _mm256_storeu_pd(&out[i], acc);
  }
  for (std::size_t i = n4; i < n; ++i) {
    double x[3] = {pts.x[i], pts.y[i], pts.z[i]};
    out[i] = p.eval(x);
  }
}

std::size_t min_dist2(const PointsSoA& pts, const double* c, std::size_t skip,
                      double* dist2_out) {
  const std::size_t n = pts.size();
  const std::size_t n4 = n & ~std::size_t(3);
  const double inf = std::numeric_limits<double>::infinity();
  __m256d vbest = _mm256_set1_pd(inf);
  const __m256d cx = _mm256_set1_pd(c[0]);
  const __m256d cy = _mm256_set1_pd(c[1]);
  const __m256d cz = _mm256_set1_pd(c[2]);
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(&pts.x[i]), cx);
    __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(&pts.y[i]), cy);
    __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(&pts.z[i]), cz);
    __m256d d2 = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
        _mm256_mul_pd(dz, dz));
    if (skip - i < 4) {  // unsigned wrap intended
      alignas(32) double lanes[4];
      _mm256_store_pd(lanes, d2);
      lanes[skip - i] = inf;
      d2 = _mm256_load_pd(lanes);
    }
    vbest = _mm256_min_pd(vbest, d2);
  }
  double best = reduce_min(vbest);
  for (std::size_t i = n4; i < n; ++i) {
    if (i == skip) continue;
    double d2 = dist2_one(pts, c, i);
    if (d2 < best) best = d2;
  }
  if (n == 0 || (n == 1 && skip == 0)) {
    *dist2_out = inf;
    return SIZE_MAX;
  }
  *dist2_out = best;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == skip) continue;
    if (dist2_one(pts, c, i) == best) return i;
  }
  return SIZE_MAX;
}

std::size_t max_dot(const PointsSoA& pts, const double* u, double* value_out) {
  const std::size_t n = pts.size();
  const std::size_t n4 = n & ~std::size_t(3);
  const double ninf = -std::numeric_limits<double>::infinity();
  __m256d vbest = _mm256_set1_pd(ninf);
  const __m256d ux = _mm256_set1_pd(u[0]);
  const __m256d uy = _mm256_set1_pd(u[1]);
  const __m256d uz = _mm256_set1_pd(u[2]);
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d d = _mm256_mul_pd(_mm256_loadu_pd(&pts.x[i]), ux);
    d = _mm256_add_pd(d, _mm256_mul_pd(_mm256_loadu_pd(&pts.y[i]), uy));
    d = _mm256_add_pd(d, _mm256_mul_pd(_mm256_loadu_pd(&pts.z[i]), uz));
    vbest = _mm256_max_pd(vbest, d);
  }
  double best = reduce_max(vbest);
  for (std::size_t i = n4; i < n; ++i) {
    double d = dot_one(pts, u, i);
    if (d > best) best = d;
  }
  if (n == 0) {
    *value_out = ninf;
    return SIZE_MAX;
  }
  *value_out = best;
  for (std::size_t i = 0; i < n; ++i)
    if (dot_one(pts, u, i) == best) return i;
  return SIZE_MAX;
}

}  // namespace avx2_kernels
}  // namespace conelab

#endif  // __AVX2__
