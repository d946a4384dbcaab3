#include "conelab/support.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace conelab {

namespace {

// Spatial hash on cells of the given size; used for the spacing dedup.
class HashGrid {
 public:
  HashGrid(double cell, int n) : cell_(cell), n_(n) {}
  void insert(const Vec3& p, std::size_t idx) {
    cells_[key(p)].push_back(idx);
    pts_.push_back(p);
  }
  bool has_within(const Vec3& p, double dist) const {
    std::array<long, 3> k = key(p);
    double d2 = dist * dist;
    std::array<long, 3> nb{};
    for (nb[0] = k[0] - 1; nb[0] <= k[0] + 1; ++nb[0])
      for (nb[1] = k[1] - 1; nb[1] <= k[1] + 1; ++nb[1])
        for (nb[2] = (n_ > 2 ? k[2] - 1 : 0); nb[2] <= (n_ > 2 ? k[2] + 1 : 0); ++nb[2]) {
          auto it = cells_.find(nb);
          if (it == cells_.end()) continue;
          for (std::size_t idx : it->second) {
            Vec3 d = sub(pts_[idx], p);
            if (dot(d, d, n_) < d2) return true;
          }
        }
    return false;
  }

 private:
  std::array<long, 3> key(const Vec3& p) const {
    std::array<long, 3> k{};
    for (int i = 0; i < n_; ++i) k[i] = long(std::floor(p[i] / cell_));
    return k;
  }
  double cell_;
  int n_;
  std::map<std::array<long, 3>, std::vector<std::size_t>> cells_;
  std::vector<Vec3> pts_;
};

// Quadtree/octree refinement toward the zero set: a cell is kept when its
// center value is small against the local gradient scale.
void collect_seed_cells(const ProjectionTarget& t, const Vec3& lo, double pitch, int cells,
                        int n, double target_pitch, std::vector<Vec3>& out) {
  struct Cell {
    Vec3 lo;
    double pitch;
  };
  std::vector<Cell> stack;
  for (int iz = 0; iz < (n > 2 ? cells : 1); ++iz)
    for (int iy = 0; iy < cells; ++iy)
      for (int ix = 0; ix < cells; ++ix)
        stack.push_back({Vec3{lo[0] + ix * pitch, lo[1] + iy * pitch, lo[2] + iz * pitch},
                         pitch});
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    Vec3 center = c.lo;
    for (int i = 0; i < n; ++i) center[i] += 0.5 * c.pitch;
    double fv = t.value(center);
    Vec3 g = t.gradient(center);
    double gn = norm(g, n);
    double diag = c.pitch * std::sqrt(double(n));
    // Magnitude screen: the surface can cross the cell only if |f| is
    // within reach of the gradient over one diagonal (cushion 2x).
    if (std::fabs(fv) > 2.0 * (gn + 1e-12) * diag &&
        std::fabs(fv) > 1e-3 * t.residual_scale(center))
      continue;
    if (c.pitch <= target_pitch) {
      out.push_back(center);
      continue;
    }
    double half = 0.5 * c.pitch;
    for (int k = 0; k < (1 << n); ++k) {
      Vec3 sl = c.lo;
      for (int i = 0; i < n; ++i)
        if (k & (1 << i)) sl[i] += half;
      stack.push_back({sl, half});
    }
  }
}

}  // namespace

SampledHypersurface sample_surface(const Polynomial& f, const Box& region, double spacing,
                                   std::uint64_t seed) {
  if (spacing <= 0) throw analysis_error("sample_surface: spacing must be positive");
  SampledHypersurface S;
  S.n = f.nvars();
  S.region = region;
  S.spacing = spacing;
  if (S.n != 2 && S.n != 3) throw analysis_error("sample_surface: need 2 or 3 variables");

  auto t = ProjectionTarget::from(f);

  double extent = 0;
  for (int i = 0; i < S.n; ++i) extent = std::max(extent, region.hi[i] - region.lo[i]);
  int coarse = 32;
  double pitch = extent / coarse;
  std::vector<Vec3> seeds;
  collect_seed_cells(t, region.lo, pitch, coarse, S.n, spacing / 2, seeds);
  // Deterministic order regardless of refinement traversal.
  std::sort(seeds.begin(), seeds.end(), [](const Vec3& a, const Vec3& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });

  Rng rng(seed);
  HashGrid grid(spacing, S.n);
  for (const auto& s0 : seeds) {
    Vec3 s = s0;
    for (int i = 0; i < S.n; ++i) s[i] += 0.05 * spacing * rng.uniform(-1, 1);
    auto x = project_to_zero(t, s, 1e-10);
    if (!x || !region.contains(*x)) continue;
    Vec3 g = t.gradient(*x);
    double gn = norm(g, S.n);
    if (std::fabs(t.value(*x)) > 1e-9 * (1 + gn)) continue;
    if (grid.has_within(*x, spacing)) continue;
    if (gn < 1e-8) {
      S.quarantined.push_back(*x);
      continue;
    }
    grid.insert(*x, S.points.size());
    S.points.push(x->data(), S.n);
    S.normals.push_back(mul(g, 1.0 / gn));
  }
  if (S.points.size() == 0) throw analysis_error("sample_surface: no zero found in region");
  return S;
}

double support_radius(const SampledHypersurface& S, std::size_t q, int side, double r_max) {
  if (q >= S.size()) throw analysis_error("support_radius: bad sample index");
  const double slack = S.spacing;
  Vec3 qp = S.point(q);
  Vec3 ndir = mul(S.normals[q], double(side));
  // The tangent ball of radius rho at q is punctured by sample x exactly
  // when rho > A/(2B) with A = |x-q|^2 - slack^2, B = <x-q, n> - slack and
  // B > 0; the largest clean radius is the minimum of those thresholds.
  double best = r_max;
  const std::size_t m = S.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (i == q) continue;
    Vec3 d{S.points.x[i] - qp[0], S.points.y[i] - qp[1], S.points.z[i] - qp[2]};
    double B = dot(d, ndir, S.n) - slack;
    if (B <= 0) continue;
    double A = dot(d, d, S.n) - slack * slack;
    double thr = A / (2 * B);
    if (thr < best) best = std::max(0.0, thr);
  }
  return best;
}

SupportReport positive_support(const SampledHypersurface& S, double r_max, double threshold) {
  SupportReport rep;
  if (r_max <= 0) r_max = S.region.diameter();
  if (threshold <= 0) threshold = 1e-3 * r_max;
  rep.r_max = r_max;
  rep.threshold = threshold;
  rep.r_plus.resize(S.size());
  rep.r_minus.resize(S.size());
  parallel_for(S.size(), [&](std::size_t i) {
    rep.r_plus[i] = support_radius(S, i, +1, r_max);
    rep.r_minus[i] = support_radius(S, i, -1, r_max);
  });
  rep.uniform_r = r_max;
  rep.double_uniform_r = r_max;
  for (std::size_t i = 0; i < S.size(); ++i) {
    double hi = std::max(rep.r_plus[i], rep.r_minus[i]);
    double lo = std::min(rep.r_plus[i], rep.r_minus[i]);
    rep.uniform_r = std::min(rep.uniform_r, hi);
    rep.double_uniform_r = std::min(rep.double_uniform_r, lo);
    if (hi < threshold) rep.failures.push_back(i);
  }
  return rep;
}

ConvexityReport convexity_probe(const SampledHypersurface& S) {
  const double eps = 1e-6;
  ConvexityReport rep;
  for (int s : {+1, -1}) {
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    for (std::size_t q = 0; q < S.size() && !witness; ++q) {
      Vec3 qp = S.point(q);
      Vec3 nrm = mul(S.normals[q], double(s));
      double u[3] = {-nrm[0], -nrm[1], -nrm[2]};
      double max_neg_dot = 0;
      max_dot(S.points, u, &max_neg_dot);
      double min_side = -max_neg_dot - dot(qp, nrm, S.n);
      if (min_side >= 0) continue;  // every sample on the nonnegative side
      for (std::size_t x = 0; x < S.size(); ++x) {
        if (x == q) continue;
        Vec3 d = sub(S.point(x), qp);
        double side_val = dot(d, nrm, S.n);
        if (side_val < -eps * norm(d, S.n)) {
          witness = {q, x};
          break;
        }
      }
    }
    if (!witness) {
      rep.convex = true;
      rep.orientation = s;
      rep.witness.reset();
      return rep;
    }
    rep.witness = witness;
  }
  rep.convex = false;
  rep.orientation = 1;
  return rep;
}

Vec3 outward_normal(const SampledHypersurface& S, const ConvexityReport& c, std::size_t i) {
  // Inward is orientation * stored normal.
  return mul(S.normals[i], -double(c.orientation));
}

Vec3 sphere_invert(const Vec3& x, const Vec3& center, double radius, int n) {
  Vec3 d = sub(x, center);
  double d2 = dot(d, d, n);
  if (d2 == 0) throw analysis_error("sphere_invert: center has no image");
  return add(center, mul(d, radius * radius / d2));
}

}  // namespace conelab
