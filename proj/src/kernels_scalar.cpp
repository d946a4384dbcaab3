// Reference kernels. Compiled with -ffp-contract=off so the AVX2 variants
// (which use plain mul/add, no FMA) reproduce these results bit for bit.

#include <limits>

#include "conelab/kernels.hpp"

namespace conelab {

CompiledPoly CompiledPoly::from(const Polynomial& f) {
  if (f.nvars() > 3) throw poly_error("kernels support at most 3 variables");
  CompiledPoly p;
  p.nvars = f.nvars();
  for (const auto& [m, c] : f.terms()) {
    Term t;
    t.coeff = to_double(c);
    for (int i = 0; i < 3; ++i) {
      if (m.e[i] > kMaxExp) throw poly_error("kernel exponent cap exceeded");
      t.e[i] = std::uint8_t(m.e[i]);
      p.max_exp[i] = std::max(p.max_exp[i], int(m.e[i]));
    }
    p.terms.push_back(t);
  }
  return p;
}

CompiledPoly CompiledPoly::abs_from(const Polynomial& f) {
  CompiledPoly p = from(f);
  for (auto& t : p.terms) t.coeff = t.coeff < 0 ? -t.coeff : t.coeff;
  return p;
}

double CompiledPoly::eval(const double* x) const {
  double pw[3][kMaxExp + 1];
  for (int v = 0; v < 3; ++v) {
    pw[v][0] = 1.0;
    for (int e = 1; e <= max_exp[v]; ++e) pw[v][e] = pw[v][e - 1] * x[v];
  }
  double acc = 0.0;
  for (const auto& t : terms) {
    double val = t.coeff;
    val *= pw[0][t.e[0]];
    val *= pw[1][t.e[1]];
    val *= pw[2][t.e[2]];
    acc += val;
  }
  return acc;
}

namespace scalar_kernels {

void eval_batch(const CompiledPoly& p, const PointsSoA& pts, std::span<double> out) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    double x[3] = {pts.x[i], i < pts.y.size() ? pts.y[i] : 0.0,
                   i < pts.z.size() ? pts.z[i] : 0.0};
    out[i] = p.eval(x);
  }
}

std::size_t min_dist2(const PointsSoA& pts, const double* c, std::size_t skip,
                      double* dist2_out) {
  const std::size_t n = pts.size();
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = SIZE_MAX;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == skip) continue;
    double dx = pts.x[i] - c[0];
    double dy = (i < pts.y.size() ? pts.y[i] : 0.0) - c[1];
    double dz = (i < pts.z.size() ? pts.z[i] : 0.0) - c[2];
    double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 < best) {
      best = d2;
      best_i = i;
    }
  }
  *dist2_out = best;
  return best_i;
}

std::size_t max_dot(const PointsSoA& pts, const double* u, double* value_out) {
  const std::size_t n = pts.size();
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_i = SIZE_MAX;
  for (std::size_t i = 0; i < n; ++i) {
    double d = pts.x[i] * u[0];
    d += (i < pts.y.size() ? pts.y[i] : 0.0) * u[1];
    d += (i < pts.z.size() ? pts.z[i] : 0.0) * u[2];
    if (d > best) {
      best = d;
      best_i = i;
    }
  }
  *value_out = best;
  return best_i;
}

}  // namespace scalar_kernels
}  // namespace conelab
