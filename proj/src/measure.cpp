#include "conelab/measure.hpp"

#include <algorithm>
#include <cmath>

namespace conelab {

namespace {

struct Seg {
  Vec3 a, b;
};

// Length of segment a-b inside the disk/ball B(p, r).
double clipped_length(const Vec3& a, const Vec3& b, const Vec3& p, double r, int n) {
  Vec3 d = sub(b, a), ap = sub(a, p);
  double A = dot(d, d, n);
  if (A == 0) return 0;
  double B = 2 * dot(ap, d, n);
  double C = dot(ap, ap, n) - r * r;
  double disc = B * B - 4 * A * C;
  if (disc <= 0) return 0;
  double sq = std::sqrt(disc);
  double t0 = (-B - sq) / (2 * A), t1 = (-B + sq) / (2 * A);
  double lo = std::max(0.0, t0), hi = std::min(1.0, t1);
  if (hi <= lo) return 0;
  return (hi - lo) * std::sqrt(A);
}

int sign_of(double v) { return v > 0 ? 1 : -1; }  // zero treated as negative

// Marching-squares cell: values at (00,10,01,11), corner at (x0,y0), size h.
// Appends the zero-level segments. `center` is the cell-center value, used
// to pair the ambiguous diagonal configurations.
void cell_segments(double f00, double f10, double f01, double f11, double center,
                   double x0, double y0, double h, std::vector<Seg>& out) {
  int s00 = sign_of(f00), s10 = sign_of(f10), s01 = sign_of(f01), s11 = sign_of(f11);
  if (s00 == s10 && s10 == s01 && s01 == s11) return;
  auto lerp = [](double a, double fa, double fb, double h_) {
    return a + h_ * (fa / (fa - fb));
  };
  // Edge crossing points (valid only when the edge signs differ).
  Vec3 bottom{lerp(x0, f00, f10, h), y0, 0};
  Vec3 top{lerp(x0, f01, f11, h), y0 + h, 0};
  Vec3 left{x0, lerp(y0, f00, f01, h), 0};
  Vec3 right{x0 + h, lerp(y0, f10, f11, h), 0};
  int config = (s00 > 0) | ((s10 > 0) << 1) | ((s01 > 0) << 2) | ((s11 > 0) << 3);
  switch (config) {
    case 1:
    case 14:
      out.push_back({left, bottom});
      break;
    case 2:
    case 13:
      out.push_back({bottom, right});
      break;
    case 4:
    case 11:
      out.push_back({left, top});
      break;
    case 8:
    case 7:
      out.push_back({top, right});
      break;
    case 3:
    case 12:
      out.push_back({left, right});
      break;
    case 5:
    case 10:
      out.push_back({bottom, top});
      break;
    case 6:   // s10, s01 positive: diagonal
    case 9: {  // s00, s11 positive: diagonal
      bool center_matches_00 = sign_of(center) == s00;
      if ((config == 9) == center_matches_00) {
        // Positive region connected along the 00-11 diagonal.
        out.push_back({left, bottom});
        out.push_back({top, right});
      } else {
        out.push_back({left, top});
        out.push_back({bottom, right});
      }
      break;
    }
    default:
      break;
  }
}

// All zero-level segments of one constrained patch inside B(p, r)+margin.
std::vector<Seg> trace_patch_curve(const CompiledPatch& patch, const Vec3& p, double r,
                                   double h) {
  std::vector<Seg> segs;
  const double x_lo = p[0] - r, y_lo = p[1] - r;
  const int cells = std::max(2, int(std::ceil(2 * r / h)));
  const double hx = 2 * r / cells;
  const int npts = cells + 1;

  auto row_points = [&](int iy) {
    PointsSoA pts;
    pts.x.resize(std::size_t(npts));
    pts.y.assign(std::size_t(npts), y_lo + iy * hx);
    pts.z.assign(std::size_t(npts), 0.0);
    for (int ix = 0; ix < npts; ++ix) pts.x[std::size_t(ix)] = x_lo + ix * hx;
    return pts;
  };

  const bool constrained = !patch.constraints.empty();
  auto constraint_ok = [&](double cx, double cy) {
    Vec3 q{cx, cy, 0};
    return patch.satisfies_constraints(q, 1e-9);
  };
  auto constraint_straddles = [&](double cx0, double cy0, double cs) {
    for (const auto& g : patch.constraints) {
      int s = 0;
      for (int k = 0; k < 4; ++k) {
        Vec3 q{cx0 + (k & 1) * cs, cy0 + ((k >> 1) & 1) * cs, 0};
        int sk = sign_of(g.eval(q.data()));
        if (k == 0)
          s = sk;
        else if (sk != s)
          return true;
      }
    }
    return false;
  };

  std::vector<double> prev(std::size_t(npts), 0.0), cur(std::size_t(npts), 0.0);
  PointsSoA pts = row_points(0);
  eval_batch(patch.target.f, pts, prev);
  for (int iy = 1; iy <= cells; ++iy) {
    pts = row_points(iy);
    eval_batch(patch.target.f, pts, cur);
    const double y0 = y_lo + (iy - 1) * hx;
    for (int ix = 0; ix < cells; ++ix) {
      const double x0 = x_lo + ix * hx;
      double f00 = prev[std::size_t(ix)], f10 = prev[std::size_t(ix) + 1];
      double f01 = cur[std::size_t(ix)], f11 = cur[std::size_t(ix) + 1];
      if (sign_of(f00) == sign_of(f10) && sign_of(f10) == sign_of(f01) &&
          sign_of(f01) == sign_of(f11))
        continue;
      // Skip cells entirely outside the disk.
      double cx = x0 + 0.5 * hx, cy = y0 + 0.5 * hx;
      double cd = std::hypot(cx - p[0], cy - p[1]);
      if (cd > r + hx) continue;

      auto emit = [&](double gx0, double gy0, double gs) {
        Vec3 c00{gx0, gy0, 0}, c10{gx0 + gs, gy0, 0}, c01{gx0, gy0 + gs, 0},
            c11{gx0 + gs, gy0 + gs, 0};
        Vec3 cc{gx0 + 0.5 * gs, gy0 + 0.5 * gs, 0};
        cell_segments(patch.target.f.eval(c00.data()), patch.target.f.eval(c10.data()),
                      patch.target.f.eval(c01.data()), patch.target.f.eval(c11.data()),
                      patch.target.f.eval(cc.data()), gx0, gy0, gs, segs);
      };

      if (!constrained) {
        double fc = patch.target.f.eval(Vec3{cx, cy, 0}.data());
        cell_segments(f00, f10, f01, f11, fc, x0, y0, hx, segs);
      } else if (constraint_straddles(x0, y0, hx)) {
        // Subdivide once; each subcell decided at its own center.
        double hs = 0.5 * hx;
        for (int sy = 0; sy < 2; ++sy)
          for (int sx = 0; sx < 2; ++sx) {
            double gx0 = x0 + sx * hs, gy0 = y0 + sy * hs;
            if (constraint_ok(gx0 + 0.5 * hs, gy0 + 0.5 * hs)) emit(gx0, gy0, hs);
          }
      } else if (constraint_ok(cx, cy)) {
        double fc = patch.target.f.eval(Vec3{cx, cy, 0}.data());
        cell_segments(f00, f10, f01, f11, fc, x0, y0, hx, segs);
      }
    }
    std::swap(prev, cur);
  }
  return segs;
}

double patch_curve_length(const CompiledPatch& patch, const Vec3& p, double r, double h) {
  auto segs = trace_patch_curve(patch, p, r, h);
  std::vector<double> lens;
  lens.reserve(segs.size());
  for (const auto& s : segs) lens.push_back(clipped_length(s.a, s.b, p, r, 2));
  return pairwise_sum(lens);
}

// ---- Surface area (marching tetrahedra) --------------------------------

struct Vec2 {
  double x, y;
};

double signed_angle(const Vec2& u, const Vec2& v) {
  double a = std::atan2(v.y, v.x) - std::atan2(u.y, u.x);
  while (a > M_PI) a -= 2 * M_PI;
  while (a <= -M_PI) a += 2 * M_PI;
  return a;
}

// Signed area of disk(0, R) cap triangle(0, a, b); sums over directed edges
// to the polygon-disk intersection area.
double edge_disk_area(const Vec2& a, const Vec2& b, double R) {
  auto inside = [R](const Vec2& v) { return v.x * v.x + v.y * v.y <= R * R; };
  auto crossv = [](const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; };
  if (inside(a) && inside(b)) return 0.5 * crossv(a, b);
  // Segment-circle intersection parameters.
  Vec2 d{b.x - a.x, b.y - a.y};
  double A = d.x * d.x + d.y * d.y;
  double B = 2 * (a.x * d.x + a.y * d.y);
  double C = a.x * a.x + a.y * a.y - R * R;
  double disc = B * B - 4 * A * C;
  auto sector = [&](const Vec2& u, const Vec2& v) { return 0.5 * R * R * signed_angle(u, v); };
  if (A == 0) return 0;
  if (disc <= 0) return sector(a, b);
  double sq = std::sqrt(disc);
  double t0 = (-B - sq) / (2 * A), t1 = (-B + sq) / (2 * A);
  t0 = std::max(t0, 0.0);
  t1 = std::min(t1, 1.0);
  if (t0 >= t1) return sector(a, b);
  Vec2 m0{a.x + t0 * d.x, a.y + t0 * d.y};
  Vec2 m1{a.x + t1 * d.x, a.y + t1 * d.y};
  return sector(a, m0) + 0.5 * crossv(m0, m1) + sector(m1, b);
}

// Area of a 3D triangle clipped to the ball B(p, r).
double triangle_ball_area(const Vec3& A, const Vec3& B, const Vec3& C, const Vec3& p,
                          double r) {
  Vec3 e1 = sub(B, A), e2 = sub(C, A);
  Vec3 nrm = cross(e1, e2);
  double nn = norm(nrm, 3);
  if (nn < 1e-300) return 0;
  nrm = mul(nrm, 1.0 / nn);
  double dz = dot(sub(p, A), nrm, 3);
  if (std::fabs(dz) >= r) return 0;
  double rd = std::sqrt(r * r - dz * dz);
  // In-plane frame centered at the projection of p.
  Vec3 u = normalized(e1, 3);
  Vec3 v = cross(nrm, u);
  Vec3 c3 = sub(p, mul(nrm, dz));  // p projected into the triangle plane
  auto to2d = [&](const Vec3& q) {
    Vec3 d = sub(q, c3);
    return Vec2{dot(d, u, 3), dot(d, v, 3)};
  };
  Vec2 a = to2d(A), b = to2d(B), c = to2d(C);
  double area = edge_disk_area(a, b, rd) + edge_disk_area(b, c, rd) + edge_disk_area(c, a, rd);
  return std::fabs(area);
}

// Six tetrahedra sharing the 0-7 diagonal tile the cube. Vertex i of the
// cube sits at (i&1, i>>1&1, i>>2&1).
constexpr int kTets[6][4] = {{0, 1, 3, 7}, {0, 3, 2, 7}, {0, 2, 6, 7},
                             {0, 6, 4, 7}, {0, 4, 5, 7}, {0, 5, 1, 7}};

void tet_triangles(const Vec3 verts[4], const double vals[4],
                   std::vector<std::array<Vec3, 3>>& out) {
  int pos[4], neg[4], np = 0, nn = 0;
  for (int i = 0; i < 4; ++i) {
    if (sign_of(vals[i]) > 0)
      pos[np++] = i;
    else
      neg[nn++] = i;
  }
  if (np == 0 || nn == 0) return;
  auto cut = [&](int i, int j) {
    double t = vals[i] / (vals[i] - vals[j]);
    return add(verts[i], mul(sub(verts[j], verts[i]), t));
  };
  if (np == 1 || nn == 1) {
    int lone = np == 1 ? pos[0] : neg[0];
    const int* rest = np == 1 ? neg : pos;
    out.push_back({cut(lone, rest[0]), cut(lone, rest[1]), cut(lone, rest[2])});
  } else {
    // 2-2 split: quad across the four mixed edges.
    int a = pos[0], b = pos[1], c = neg[0], d = neg[1];
    Vec3 q0 = cut(a, c), q1 = cut(a, d), q2 = cut(b, d), q3 = cut(b, c);
    out.push_back({q0, q1, q2});
    out.push_back({q0, q2, q3});
  }
}

double patch_surface_area(const CompiledPatch& patch, const Vec3& p, double r, double h) {
  const int cells = std::max(2, int(std::ceil(2 * r / h)));
  const double hx = 2 * r / cells;
  const int npts = cells + 1;
  const Vec3 lo{p[0] - r, p[1] - r, p[2] - r};

  auto plane_values = [&](int iz, std::vector<double>& out) {
    PointsSoA pts;
    pts.x.resize(std::size_t(npts) * npts);
    pts.y.resize(std::size_t(npts) * npts);
    pts.z.assign(std::size_t(npts) * npts, lo[2] + iz * hx);
    for (int iy = 0; iy < npts; ++iy)
      for (int ix = 0; ix < npts; ++ix) {
        pts.x[std::size_t(iy) * npts + ix] = lo[0] + ix * hx;
        pts.y[std::size_t(iy) * npts + ix] = lo[1] + iy * hx;
      }
    out.resize(pts.size());
    eval_batch(patch.target.f, pts, out);
  };

  std::vector<double> prev, cur;
  plane_values(0, prev);
  std::vector<double> areas;
  std::vector<std::array<Vec3, 3>> tris;
  for (int iz = 1; iz <= cells; ++iz) {
    plane_values(iz, cur);
    double z0 = lo[2] + (iz - 1) * hx;
    for (int iy = 0; iy < cells; ++iy) {
      for (int ix = 0; ix < cells; ++ix) {
        double corner[8];
        Vec3 cv[8];
        bool all_pos = true, all_neg = true;
        for (int k = 0; k < 8; ++k) {
          int dx = k & 1, dy = (k >> 1) & 1, dz = (k >> 2) & 1;
          const std::vector<double>& plane = dz ? cur : prev;
          corner[k] = plane[std::size_t(iy + dy) * npts + (ix + dx)];
          cv[k] = Vec3{lo[0] + (ix + dx) * hx, lo[1] + (iy + dy) * hx, z0 + dz * hx};
          (sign_of(corner[k]) > 0 ? all_neg : all_pos) = false;
        }
        if (all_pos || all_neg) continue;
        Vec3 center{lo[0] + (ix + 0.5) * hx, lo[1] + (iy + 0.5) * hx, z0 + 0.5 * hx};
        double cd = norm(sub(center, p), 3);
        if (cd > r + 2 * hx) continue;
        if (!patch.constraints.empty() && !patch.satisfies_constraints(center, 1e-9))
          continue;
        tris.clear();
        for (const auto& tet : kTets) {
          Vec3 verts[4];
          double vals[4];
          for (int k = 0; k < 4; ++k) {
            verts[k] = cv[tet[k]];
            vals[k] = corner[tet[k]];
          }
          tet_triangles(verts, vals, tris);
        }
        double cell_area = 0;
        for (const auto& t : tris) cell_area += triangle_ball_area(t[0], t[1], t[2], p, r);
        if (cell_area != 0) areas.push_back(cell_area);
      }
    }
    std::swap(prev, cur);
  }
  return pairwise_sum(areas);
}

double ball_measure(int d, double r) { return d == 1 ? 2 * r : M_PI * r * r; }

DensityEstimate synth_density(int d, double value) {
  DensityEstimate e;
  e.dim = d;
  e.liminf_estimate = value;
  e.monotone_trend = true;
  return e;
}

}  // namespace

double local_measure(const Variety& V, const Vec3& p, double r, double resolution) {
  if (V.nvars != 2 && V.nvars != 3)
    throw analysis_error("measure estimation requires 2 or 3 variables");
  if (resolution > r / 32 + 1e-15)
    throw analysis_error("resolution too coarse (need <= r/32)");
  auto patches = compile_variety(V);
  double total = 0;
  for (const auto& patch : patches) {
    total += V.nvars == 2 ? patch_curve_length(patch, p, r, resolution)
                          : patch_surface_area(patch, p, r, resolution);
  }
  return total;
}

std::vector<double> default_radius_ladder() {
  std::vector<double> r;
  for (int k = 3; k <= 9; ++k) r.push_back(std::ldexp(1.0, -k));
  return r;
}

DensityEstimate lower_density(const Variety& V, const Vec3& p,
                              std::vector<double> radius_ladder, double rel_resolution) {
  if (radius_ladder.empty()) radius_ladder = default_radius_ladder();
  std::sort(radius_ladder.begin(), radius_ladder.end(), std::greater<>());
  DensityEstimate est;
  est.dim = V.nvars - 1;
  est.resolution = rel_resolution;
  est.radii = radius_ladder;
  std::vector<double> measures(radius_ladder.size());
  parallel_for(radius_ladder.size(), [&](std::size_t i) {
    measures[i] = local_measure(V, p, radius_ladder[i], rel_resolution * radius_ladder[i]);
  });
  est.measures = measures;
  est.monotone_trend = true;
  for (std::size_t i = 0; i < est.radii.size(); ++i) {
    est.ratios.push_back(est.measures[i] / ball_measure(est.dim, est.radii[i]));
    if (i > 0 && est.ratios[i] > est.ratios[i - 1] + 1e-9) est.monotone_trend = false;
  }
  std::size_t tail = est.ratios.size() >= 3 ? est.ratios.size() - 3 : 0;
  est.liminf_estimate = *std::min_element(est.ratios.begin() + long(tail), est.ratios.end());
  return est;
}

MultiplicityEstimate multiplicity(const Variety& V, const Vec3& p, const ConeDescriptor& cone,
                                  std::vector<double> radius_ladder, double rel_resolution) {
  MultiplicityEstimate m;
  m.numerator = lower_density(V, p, radius_ladder, rel_resolution);
  int d = V.nvars - 1;
  switch (cone.kind) {
    case ConeDescriptor::Kind::Empty:
      throw analysis_error("multiplicity: empty tangent cone");
    case ConeDescriptor::Kind::Flat:
      m.denominator = synth_density(d, 1.0);
      break;
    case ConeDescriptor::Kind::RayFan:
    case ConeDescriptor::Kind::Sampled: {
      if (d != 1)
        throw analysis_error("multiplicity: ray-fan denominators only for curves");
      m.denominator = synth_density(d, double(cone.directions.size()) / 2.0);
      break;
    }
    case ConeDescriptor::Kind::Algebraic: {
      Variety cone_variety = Variety::hypersurface(cone.form->base);
      m.denominator = lower_density(cone_variety, Vec3{0, 0, 0}, m.numerator.radii,
                                    rel_resolution);
      break;
    }
  }
  if (m.denominator.liminf_estimate == 0)
    throw analysis_error("multiplicity: zero-density tangent cone");
  m.value = m.numerator.liminf_estimate / m.denominator.liminf_estimate;
  return m;
}

std::vector<std::array<Vec3, 2>> trace_curve(const Variety& V, const Vec3& p, double r,
                                             double resolution) {
  if (V.nvars != 2) throw analysis_error("trace_curve expects a plane variety");
  std::vector<std::array<Vec3, 2>> out;
  for (const auto& patch : compile_variety(V))
    for (const auto& s : trace_patch_curve(patch, p, r, resolution))
      out.push_back({s.a, s.b});
  return out;
}

double projected_length(const Variety& V, const Vec3& p, const Vec3& u, double r,
                        double resolution) {
  if (V.nvars != 2) throw analysis_error("projected_length expects a plane curve");
  auto patches = compile_variety(V);
  std::vector<std::pair<double, double>> intervals;
  for (const auto& patch : patches) {
    for (const auto& s : trace_patch_curve(patch, p, r, resolution)) {
      // Only the portion inside the disk counts.
      Vec3 d = sub(s.b, s.a), ap = sub(s.a, p);
      double A = dot(d, d, 2);
      if (A == 0) continue;
      double B = 2 * dot(ap, d, 2), C = dot(ap, ap, 2) - r * r;
      double disc = B * B - 4 * A * C;
      if (disc <= 0) continue;
      double sq = std::sqrt(disc);
      double lo = std::max(0.0, (-B - sq) / (2 * A)), hi = std::min(1.0, (-B + sq) / (2 * A));
      if (hi <= lo) continue;
      Vec3 qa = add(s.a, mul(d, lo)), qb = add(s.a, mul(d, hi));
      double ta = dot(sub(qa, p), u, 2), tb = dot(sub(qb, p), u, 2);
      intervals.emplace_back(std::min(ta, tb), std::max(ta, tb));
    }
  }
  std::sort(intervals.begin(), intervals.end());
  double total = 0, end = -1e300;
  for (const auto& [a, b] : intervals) {
    if (a > end) {
      total += b - a;
      end = b;
    } else if (b > end) {
      total += b - end;
      end = b;
    }
  }
  return total;
}

}  // namespace conelab
