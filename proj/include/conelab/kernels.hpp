#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "conelab/polynomial.hpp"

namespace conelab {

// Double-precision compilation of a polynomial for the batch kernels.
// Terms keep the canonical graded-lex order so scalar and SIMD paths add in
// the same sequence and produce bit-identical sums.
struct CompiledPoly {
  struct Term {
    double coeff;
    std::uint8_t e[3];
  };
  int nvars = 0;
  int max_exp[3] = {0, 0, 0};
  std::vector<Term> terms;

  static constexpr int kMaxExp = 32;
  static CompiledPoly from(const Polynomial& f);  // requires nvars <= 3, exps <= kMaxExp
  // Same support, |coefficients|: evaluates the local magnitude scale used
  // for relative residual tests.
  static CompiledPoly abs_from(const Polynomial& f);

  double eval(const double* x) const;  // one point, same op order as the kernels
};

// Structure-of-arrays point cloud. y/z stay empty below that dimension.
struct PointsSoA {
  std::vector<double> x, y, z;
  std::size_t size() const { return x.size(); }
  void push(const double* p, int n) {
    x.push_back(p[0]);
    y.push_back(n > 1 ? p[1] : 0.0);
    z.push_back(n > 2 ? p[2] : 0.0);
  }
  void get(std::size_t i, double* p) const {
    p[0] = x[i];
    p[1] = i < y.size() ? y[i] : 0.0;
    p[2] = i < z.size() ? z[i] : 0.0;
  }
};

enum class SimdLevel { scalar = 0, avx2 = 1 };

SimdLevel active_simd_level();
const char* simd_level_name(SimdLevel level);
// Testing hook; silently clamps to what the CPU supports.
void force_simd_level(SimdLevel level);
bool cpu_has_avx2();

// out[i] = p(points[i]).
void eval_batch(const CompiledPoly& p, const PointsSoA& pts, std::span<double> out);

// Minimum squared distance from c to the cloud, ignoring index skip
// (SIZE_MAX = none). Returns the smallest attaining index, SIZE_MAX when the
// cloud is empty or fully skipped.
std::size_t min_dist2(const PointsSoA& pts, const double* c, std::size_t skip,
                      double* dist2_out);

// Maximum of dot(points[i], u); smallest attaining index, SIZE_MAX if empty.
std::size_t max_dot(const PointsSoA& pts, const double* u, double* value_out);

// Reference implementations (always built; the dispatch table points here
// when AVX2 is unavailable).
namespace scalar_kernels {
void eval_batch(const CompiledPoly& p, const PointsSoA& pts, std::span<double> out);
std::size_t min_dist2(const PointsSoA& pts, const double* c, std::size_t skip, double* dist2_out);
std::size_t max_dot(const PointsSoA& pts, const double* u, double* value_out);
}  // namespace scalar_kernels

namespace avx2_kernels {
void eval_batch(const CompiledPoly& p, const PointsSoA& pts, std::span<double> out);
std::size_t min_dist2(const PointsSoA& pts, const double* c, std::size_t skip, double* dist2_out);
std::size_t max_dot(const PointsSoA& pts, const double* u, double* value_out);
}  // namespace avx2_kernels

}  // namespace conelab
