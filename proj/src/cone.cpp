#include "conelab/cone.hpp"

#include <algorithm>
#include <cmath>

#include "conelab/unipoly.hpp"

namespace conelab {

namespace {

Vec3 canonical_sign(Vec3 v, int n) {
  for (int i = 0; i < n; ++i) {
    if (std::fabs(v[i]) > 1e-14) {
      if (v[i] < 0)
        for (int j = 0; j < n; ++j) v[j] = -v[j];
      break;
    }
  }
  return v;
}

bool lex_less(const Vec3& a, const Vec3& b) {
  for (int i = 0; i < 3; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

void sort_dirs(std::vector<Vec3>& dirs) { std::sort(dirs.begin(), dirs.end(), lex_less); }

std::vector<Vec3> dedup_dirs(std::vector<Vec3> dirs, int n, double angular_tol) {
  sort_dirs(dirs);
  std::vector<Vec3> out;
  for (const auto& d : dirs) {
    bool dup = false;
    for (const auto& o : out)
      if (angular_distance(d, o, n) <= angular_tol) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(d);
  }
  return out;
}

// Linear-plane candidates for a trivariate homogeneous factor, recovered
// from its sphere zero set.
std::vector<Polynomial> numeric_plane_candidates(const Polynomial& g, std::uint64_t seed) {
  std::vector<Polynomial> cands;
  int n = g.nvars();
  // Coordinate planes first.
  for (int i = 0; i < n; ++i) cands.push_back(Polynomial::variable(n, i));
  if (n != 3) return cands;
  auto t = ProjectionTarget::from(g);
  std::vector<Vec3> zeros;
  Rng rng(seed);
  for (const auto& d : sphere_grid(3, 96)) {
    Vec3 u = d;
    for (int i = 0; i < 3; ++i) u[i] += 0.01 * rng.uniform(-1, 1);
    u = normalized(u, 3);
    if (auto z = polish_zero_on_sphere(t, u, 1e-10)) zeros.push_back(*z);
  }
  zeros = dedup_dirs(std::move(zeros), 3, 1e-3);
  // Normals from zero pairs, rationalized with small denominators.
  std::vector<Vec3> normals;
  for (std::size_t i = 0; i < zeros.size(); ++i)
    for (std::size_t j = i + 1; j < zeros.size() && normals.size() < 64; ++j) {
      Vec3 nrm = cross(zeros[i], zeros[j]);
      double m = norm(nrm, 3);
      if (m < 1e-3) continue;
      normals.push_back(canonical_sign(mul(nrm, 1.0 / m), 3));
    }
  normals = dedup_dirs(std::move(normals), 3, 1e-4);
  for (const auto& nd : normals) {
    Polynomial cand(n);
    bool ok = true;
    double scale = 0;
    for (int i = 0; i < 3; ++i) scale = std::max(scale, std::fabs(nd[i]));
    for (int i = 0; i < 3 && ok; ++i) {
      auto q = rationalize(nd[i] / scale, 32);
      if (!q) ok = false;
      else
        cand += Polynomial::variable(n, i) * Polynomial::constant(n, *q);
    }
    if (ok && !cand.is_zero()) cands.push_back(normalize_primitive(cand));
  }
  return cands;
}

}  // namespace

ConeDescriptor ConeDescriptor::flat(Vec3 normal, int n) {
  ConeDescriptor c;
  c.kind = Kind::Flat;
  c.normal = canonical_sign(normalized(normal, n), n);
  c.n = n;
  return c;
}

ConeDescriptor ConeDescriptor::ray_fan(std::vector<Vec3> dirs, int n) {
  ConeDescriptor c;
  c.kind = Kind::RayFan;
  c.directions = dedup_dirs(std::move(dirs), n, 1e-9);
  c.n = n;
  return c;
}

HomogeneousForm algebraic_cone(const Polynomial& f, std::span<const Rational> p) {
  if (f.is_zero()) throw analysis_error("algebraic cone of the zero polynomial");
  std::vector<Rational> pv(p.begin(), p.end());
  if (sign(f.evaluate(std::span<const Rational>(pv))) != 0)
    throw analysis_error("point is not on the variety");
  Polynomial g = f.translate(p);
  return leading_form(g);
}

SignLocus sign_change_locus(const HomogeneousForm& h, int samples, std::uint64_t seed) {
  if (h.base.is_zero()) throw analysis_error("sign-change locus of the zero form");
  int n = h.base.nvars();
  FactorList fl = square_free_factor(h.base);
  if (n == 3) {
    for (const auto& fac : fl.factors) {
      if (fac.poly.degree() <= 1) continue;
      for (const auto& cand : numeric_plane_candidates(fac.poly, seed))
        try_divide_candidate(fl, cand);
    }
  }
  SignLocus locus;
  locus.constant = fl.constant;
  locus.odd_part = Polynomial::constant(n, Rational(1));
  locus.even_part = Polynomial::constant(n, Rational(1));
  Rng rng(seed);
  auto dirs = sphere_grid(n, std::max(samples, 16));
  for (const auto& fac : fl.factors) {
    if (fac.multiplicity % 2 == 1) locus.odd_part *= fac.poly.extended(n);
    if (fac.multiplicity / 2 > 0)
      locus.even_part *= fac.poly.extended(n).pow(unsigned(fac.multiplicity / 2));
    if (fac.multiplicity % 2 == 0) continue;

    RealizableFactor rf;
    rf.factor = fac.poly;
    CompiledPoly cp = CompiledPoly::from(fac.poly.extended(n));
    double vmin = 0, vmax = 0;
    Vec3 umin{}, umax{};
    for (const auto& d0 : dirs) {
      Vec3 d = d0;
      for (int i = 0; i < n; ++i) d[i] += 1e-3 * rng.uniform(-1, 1);
      d = normalized(d, n);
      double v = cp.eval(d.data());
      if (v < vmin) {
        vmin = v;
        umin = d;
      }
      if (v > vmax) {
        vmax = v;
        umax = d;
      }
    }
    rf.realizable = vmin < 0 && vmax > 0;
    if (rf.realizable) {
      rf.evidence.push_back(umin);
      rf.evidence.push_back(umax);
    }
    locus.factors.push_back(std::move(rf));
  }
  return locus;
}

std::optional<Vec3> flat_normal(const HomogeneousForm& h, const SignLocus& locus) {
  int n = h.base.nvars();
  const Polynomial* lin = nullptr;
  for (const auto& rf : locus.factors) {
    if (!rf.realizable) continue;
    if (rf.factor.degree() != 1) return std::nullopt;  // nonlinear sign change
    if (lin && poly_cmp(*lin, rf.factor) != 0) return std::nullopt;  // two hyperplanes
    lin = &rf.factor;
  }
  if (!lin) return std::nullopt;
  Vec3 nrm{};
  for (int i = 0; i < n; ++i) {
    Monomial m;
    m.e[i] = 1;
    if (const Rational* c = lin->coeff(m)) nrm[i] = to_double(*c);
  }
  if (lin->constant_term() != 0) return std::nullopt;  // not through the origin
  return canonical_sign(normalized(nrm, n), n);
}

ConeDescriptor sampled_cone(const Variety& V, std::span<const Rational> p,
                            const SampledConeOptions& opt) {
  int n = V.nvars;
  if (opt.scale_ladder.size() < 3) throw analysis_error("scale ladder needs >= 3 entries");
  for (std::size_t i = 1; i < opt.scale_ladder.size(); ++i)
    if (opt.scale_ladder[i] <= opt.scale_ladder[i - 1])
      throw analysis_error("scale ladder must increase");
  Vec3 pd{};
  for (int i = 0; i < n; ++i) pd[i] = to_double(p[i]);
  if (!on_variety(V, pd, 1e-9)) throw analysis_error("point is not on the variety");

  auto patches = compile_variety(V);
  struct Cand {
    Vec3 dir;
    double quality;
  };
  // Per scale: project sphere seeds, keep on-surface points near radius 1/lambda.
  std::vector<std::vector<Cand>> per_scale(opt.scale_ladder.size());
  auto base_dirs = sphere_grid(n, opt.seeds_per_scale);
  for (std::size_t s = 0; s < opt.scale_ladder.size(); ++s) {
    double rho = 1.0 / opt.scale_ladder[s];
    Rng rng(Rng(opt.seed).fork(s).next_u64());
    std::vector<Cand>& cands = per_scale[s];
    for (const auto& d0 : base_dirs) {
      for (double radial : {1.0, 0.75, 1.35}) {
        Vec3 d = d0;
        for (int i = 0; i < n; ++i) d[i] += 0.02 * rng.uniform(-1, 1);
        d = normalized(d, n);
        Vec3 seed_pt = add(pd, mul(d, rho * radial));
        for (const auto& patch : patches) {
          auto x = project_to_zero(patch.target, seed_pt, opt.residual_tol);
          if (!x || !patch.satisfies_constraints(*x, 1e-7)) continue;
          Vec3 delta = sub(*x, pd);
          double dist = norm(delta, n);
          if (dist < 0.4 * rho || dist > 2.5 * rho) continue;
          cands.push_back({mul(delta, 1.0 / dist), std::fabs(dist / rho - 1.0)});
        }
      }
    }
    if (cands.empty())
      throw analysis_error("no variety points found at scale " +
                           std::to_string(opt.scale_ladder[s]));
  }

  // Greedy angular clustering, best scale fidelity first.
  auto cluster = [&](std::vector<Cand> cands) {
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.quality != b.quality) return a.quality < b.quality;
      return lex_less(a.dir, b.dir);
    });
    std::vector<Vec3> reps;
    for (const auto& c : cands) {
      bool claimed = false;
      for (const auto& r : reps)
        if (angular_distance(c.dir, r, n) <= opt.tolerance) {
          claimed = true;
          break;
        }
      if (!claimed) reps.push_back(c.dir);
    }
    return reps;
  };
  std::vector<std::vector<Vec3>> scale_dirs;
  scale_dirs.reserve(per_scale.size());
  for (auto& cands : per_scale) scale_dirs.push_back(cluster(std::move(cands)));

  // Keep finest-scale directions present at every coarser scale. Secant
  // directions of an algebraic germ approach the limit ray at a power-law
  // rate in the radius, so the coarse-scale match window extrapolates the
  // finest-scale tolerance along that law: if the finest radius rho_f
  // guarantees an offset <= tol, radius rho_s guarantees
  // tol^(log rho_s / log rho_f) for any power-law exponent.
  ConeDescriptor cone;
  cone.kind = ConeDescriptor::Kind::Sampled;
  cone.n = n;
  cone.scale_ladder = opt.scale_ladder;
  cone.tolerance = opt.tolerance;
  const double log_rho_f = std::log(1.0 / opt.scale_ladder.back());
  for (const auto& u : scale_dirs.back()) {
    bool everywhere = true;
    for (std::size_t s = 0; s + 1 < scale_dirs.size() && everywhere; ++s) {
      double expo = std::log(1.0 / opt.scale_ladder[s]) / log_rho_f;
      double window = 2.0 * std::pow(opt.tolerance, expo);
      bool found = false;
      for (const auto& v : scale_dirs[s])
        if (angular_distance(u, v, n) <= window) {
          found = true;
          break;
        }
      everywhere = found;
    }
    if (everywhere) cone.directions.push_back(u);
  }
  sort_dirs(cone.directions);
  if (cone.directions.empty()) cone.kind = ConeDescriptor::Kind::Empty;
  return cone;
}

bool is_symmetric(const ConeDescriptor& c, double angular_tol) {
  if (c.kind != ConeDescriptor::Kind::Sampled && c.kind != ConeDescriptor::Kind::RayFan)
    throw analysis_error("is_symmetric expects a sampled cone or ray fan");
  for (const auto& u : c.directions) {
    Vec3 nu = mul(u, -1.0);
    bool found = false;
    for (const auto& v : c.directions)
      if (angular_distance(nu, v, c.n) <= angular_tol) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

ConeDescriptor symmetrize(const ConeDescriptor& c) {
  ConeDescriptor out = c;
  for (const auto& u : c.directions) out.directions.push_back(mul(u, -1.0));
  out.directions = dedup_dirs(std::move(out.directions), c.n, 1e-9);
  return out;
}

bool hypersurface_candidate(const ConeDescriptor& c) {
  if (c.directions.empty()) return false;
  if (c.n == 2) {
    for (const auto& u : c.directions)
      if (angular_distance(u, c.directions.front(), 2) > 1e-3) return true;
    return false;
  }
  // n = 3: directions must not all lie on one line through the origin.
  const Vec3& a = c.directions.front();
  for (const auto& u : c.directions) {
    Vec3 x = cross(a, u);
    if (norm(x, 3) > 1e-3) return true;
  }
  return false;
}

std::vector<Vec3> sign_change_directions(const SignLocus& locus, int nvars,
                                         int samples, std::uint64_t seed) {
  std::vector<Vec3> dirs;
  for (const auto& rf : locus.factors) {
    if (!rf.realizable) continue;
    const Polynomial& g = rf.factor;
    if (nvars == 2) {
      // Exact: roots of g in the charts x = 1 and y = 1 over [-1, 1].
      for (int chart = 0; chart < 2; ++chart) {
        UniPoly u;
        u.c.assign(std::size_t(g.degree()) + 1, Rational(0));
        for (const auto& [m, c] : g.terms()) u.c[m.e[chart == 0 ? 1 : 0]] = c;
        u.trim();
        if (u.degree() < 0) continue;
        for (const auto& [a, b] : isolate_real_roots(u, Rational(-1), Rational(1))) {
          double t = refine_root(u, a, b);
          Vec3 d = chart == 0 ? Vec3{1.0, t, 0.0} : Vec3{t, 1.0, 0.0};
          d = normalized(d, 2);
          dirs.push_back(d);
          dirs.push_back(mul(d, -1.0));
        }
      }
    } else {
      auto t = ProjectionTarget::from(g.extended(nvars));
      Rng rng(seed);
      for (const auto& d0 : sphere_grid(nvars, std::max(samples, 32))) {
        Vec3 u = d0;
        for (int i = 0; i < nvars; ++i) u[i] += 0.005 * rng.uniform(-1, 1);
        u = normalized(u, nvars);
        if (auto z = polish_zero_on_sphere(t, u, 1e-10)) dirs.push_back(*z);
      }
    }
  }
  return dedup_dirs(std::move(dirs), nvars, 1e-6);
}

double normal_modulus(const std::vector<Vec3>& points, const std::vector<Vec3>& normals,
                      int n, double pair_distance) {
  double worst = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      Vec3 d = sub(points[i], points[j]);
      double dist = norm(d, n);
      if (dist > pair_distance || dist < 1e-12) continue;
      double ang = angular_distance(normals[i], normals[j], n);
      ang = std::min(ang, M_PI - ang);  // normals defined up to sign
      worst = std::max(worst, ang / dist);
    }
  }
  return worst;
}

}  // namespace conelab
