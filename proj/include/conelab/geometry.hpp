#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "conelab/kernels.hpp"

namespace conelab {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b, int n) {
  double s = 0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}
inline double norm(const Vec3& a, int n) { return std::sqrt(dot(a, a, n)); }
inline Vec3 sub(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 add(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 mul(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline Vec3 normalized(const Vec3& a, int n) {
  double m = norm(a, n);
  Vec3 r{};
  for (int i = 0; i < n; ++i) r[i] = a[i] / m;
  return r;
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline double angular_distance(const Vec3& a, const Vec3& b, int n) {
  double c = dot(a, b, n);
  if (c > 1) c = 1;
  if (c < -1) c = -1;
  return std::acos(c);
}

// Axis-aligned box; lo/hi per coordinate.
struct Box {
  Vec3 lo{}, hi{};
  int n = 2;
  double diameter() const {
    Vec3 d = sub(hi, lo);
    return norm(d, n);
  }
  bool contains(const Vec3& p, double slack = 0) const {
    for (int i = 0; i < n; ++i)
      if (p[i] < lo[i] - slack || p[i] > hi[i] + slack) return false;
    return true;
  }
  static Box square(double half, int n) {
    Box b;
    b.n = n;
    for (int i = 0; i < n; ++i) {
      b.lo[i] = -half;
      b.hi[i] = half;
    }
    return b;
  }
  static Box centered(const Vec3& c, double half, int n) {
    Box b;
    b.n = n;
    for (int i = 0; i < n; ++i) {
      b.lo[i] = c[i] - half;
      b.hi[i] = c[i] + half;
    }
    return b;
  }
};

// splitmix64-based generator: deterministic across platforms and standard
// libraries, which the byte-identical report requirement depends on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // [0, 1)
    return double(next_u64() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double gaussian() {
    // Box-Muller, one value per call (cache dropped for simplicity).
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  Vec3 unit_vector(int n) {
    for (;;) {
      Vec3 v{};
      for (int i = 0; i < n; ++i) v[i] = gaussian();
      double m = norm(v, n);
      if (m > 1e-6) return mul(v, 1.0 / m);
    }
  }
  // Deterministic child stream, independent of call order elsewhere.
  Rng fork(std::uint64_t salt) const { return Rng(state_ ^ (salt * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL)); }

 private:
  std::uint64_t state_;
};

// Runs fn(i) for i in [0, count); results must be written by index. Thread
// count respects CONELAB_THREADS. Deterministic by construction.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);
int max_threads();

// Deterministic uniform direction grids (Fibonacci sphere for n = 3).
std::vector<Vec3> sphere_grid(int n, int count);

// Pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> xs);

// Damped Newton projection of seed onto {f = 0}. Steps along the gradient;
// the residual test is relative to the polynomial's local magnitude scale.
struct ProjectionTarget {
  CompiledPoly f;
  CompiledPoly fabs;     // |coefficients| of f, for the residual scale
  CompiledPoly grad[3];
  int n = 0;
  static ProjectionTarget from(const Polynomial& f);
  double residual_scale(const Vec3& x) const;
  double value(const Vec3& x) const;
  Vec3 gradient(const Vec3& x) const;
};

std::optional<Vec3> project_to_zero(const ProjectionTarget& t, Vec3 seed,
                                    double rel_tol = 1e-9, int max_iter = 60);

// Newton steps toward {f = 0} restricted to the unit sphere.
std::optional<Vec3> polish_zero_on_sphere(const ProjectionTarget& t, Vec3 u,
                                          double rel_tol = 1e-10);

}  // namespace conelab
