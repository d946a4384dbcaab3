#include "conelab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace conelab {

namespace {

// Product of the equations of every patch passing through p (exactly).
struct LocalModel {
  Polynomial f;          // product polynomial, translated so p = origin
  int patches_through = 0;
  bool constrained = false;
};

LocalModel local_model(const Variety& V, std::span<const Rational> p) {
  LocalModel lm;
  lm.f = Polynomial::constant(V.nvars, Rational(1));
  std::vector<Rational> pv(p.begin(), p.end());
  for (const auto& patch : V.patches) {
    Polynomial eq = patch.equation.extended(V.nvars);
    if (sign(eq.evaluate(std::span<const Rational>(pv))) != 0) continue;
    bool ok = true;
    for (const auto& c : patch.constraints)
      if (sign(c.extended(V.nvars).evaluate(std::span<const Rational>(pv))) < 0) ok = false;
    if (!ok) continue;
    lm.patches_through += 1;
    lm.constrained = lm.constrained || !patch.constraints.empty();
    lm.f = lm.f * eq.translate(p);
  }
  return lm;
}

bool gradient_nonzero_exact(const Polynomial& f_at_origin) {
  for (int i = 0; i < f_at_origin.nvars(); ++i) {
    Monomial m;
    m.e[i] = 1;
    if (f_at_origin.coeff(m)) return true;
  }
  return false;
}

// Sign-change verification for the symmetry hypothesis: f takes both signs
// just off the sampled surface near p.
bool verify_sign_change(const Polynomial& f_at_origin, const ConeDescriptor& cone,
                        std::uint64_t seed) {
  auto t = ProjectionTarget::from(f_at_origin);
  Rng rng(seed);
  bool pos = false, neg = false;
  for (const auto& u : cone.directions) {
    for (double rho : {1e-4, 1e-5}) {
      Vec3 base = mul(u, rho);
      auto x = project_to_zero(t, base, 1e-10);
      if (!x) continue;
      Vec3 g = t.gradient(*x);
      double gn = norm(g, t.n);
      if (gn < 1e-12) continue;
      Vec3 nrm = mul(g, 1.0 / gn);
      for (double eps : {1e-2 * rho, 5e-2 * rho}) {
        double v1 = t.value(add(*x, mul(nrm, eps)));
        double v2 = t.value(sub(*x, mul(nrm, eps)));
        pos = pos || v1 > 0 || v2 > 0;
        neg = neg || v1 < 0 || v2 < 0;
      }
      if (pos && neg) return true;
    }
  }
  (void)rng;
  return pos && neg;
}

// Looks for sample pairs at every separation rung with a large normal
// angle: a machine-checkable witness against C1 regularity at p.
std::optional<std::array<Vec3, 4>> normal_jump_witness(const Polynomial& f_at_origin,
                                                       double region_half,
                                                       std::uint64_t seed) {
  const double theta0 = 0.5;  // radians
  for (int rung = 0; rung < 3; ++rung) {
    double half = region_half * std::pow(0.25, rung);
    Box region = Box::centered(Vec3{0, 0, 0}, half, f_at_origin.nvars());
    SampledHypersurface S;
    try {
      S = sample_surface(f_at_origin, region, half / 24, seed + std::uint64_t(rung));
    } catch (const analysis_error&) {
      return std::nullopt;
    }
    double delta = half * 0.25;
    bool found = false;
    std::array<Vec3, 4> witness{};
    for (std::size_t i = 0; i < S.size() && !found; ++i) {
      for (std::size_t j = i + 1; j < S.size(); ++j) {
        Vec3 d = sub(S.point(i), S.point(j));
        double dist = norm(d, S.n);
        if (dist > delta || dist < 1e-14) continue;
        double ang = angular_distance(S.normals[i], S.normals[j], S.n);
        ang = std::min(ang, M_PI - ang);
        if (ang > theta0) {
          witness = {S.point(i), S.normals[i], S.point(j), S.normals[j]};
          found = true;
          break;
        }
      }
    }
    if (!found) return std::nullopt;  // angle gap closes at this rung
    if (rung == 2) return witness;
  }
  return std::nullopt;
}

}  // namespace

const char* verdict_name(VerdictClass c) {
  switch (c) {
    case VerdictClass::RegularPoint: return "RegularPoint";
    case VerdictClass::C1_Hypersurface: return "C1_Hypersurface";
    case VerdictClass::C11_Hypersurface: return "C11_Hypersurface";
    case VerdictClass::UnionOfC1Sheets: return "UnionOfC1Sheets";
    case VerdictClass::Cusp: return "Cusp";
    case VerdictClass::NotC1: return "NotC1";
    case VerdictClass::MultiBranch: return "MultiBranch";
    case VerdictClass::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

double hoelder_probe(const Polynomial& f, std::span<const Rational> p, const Vec3& flat_normal,
                     int n_samples, double d_lo, double d_hi) {
  Polynomial g = f.translate(p);
  auto t = ProjectionTarget::from(g);
  int n = g.nvars();
  // Tangent directions orthogonal to the flat normal.
  std::vector<Vec3> tangents;
  if (n == 2) {
    Vec3 tv{-flat_normal[1], flat_normal[0], 0};
    tangents.push_back(tv);
    tangents.push_back(mul(tv, -1.0));
  } else {
    Vec3 a = std::fabs(flat_normal[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    Vec3 t1 = normalized(cross(flat_normal, a), 3);
    Vec3 t2 = cross(flat_normal, t1);
    for (int k = 0; k < 8; ++k) {
      double ang = 2 * M_PI * k / 8;
      tangents.push_back(add(mul(t1, std::cos(ang)), mul(t2, std::sin(ang))));
    }
  }
  std::vector<double> lx, ly;
  for (int k = 0; k < n_samples; ++k) {
    double d = d_lo * std::pow(d_hi / d_lo, double(k) / (n_samples - 1));
    for (const auto& tv : tangents) {
      auto x = project_to_zero(t, mul(tv, d), 1e-12);
      if (!x) continue;
      double dist = norm(*x, n);
      if (dist < 0.3 * d || dist > 3 * d) continue;
      Vec3 grad = t.gradient(*x);
      double gn = norm(grad, n);
      if (gn < 1e-13) continue;
      Vec3 nrm = mul(grad, 1.0 / gn);
      double ang = angular_distance(nrm, flat_normal, n);
      ang = std::min(ang, M_PI - ang);
      if (ang < 1e-14) continue;
      lx.push_back(std::log(dist));
      ly.push_back(std::log(ang));
    }
  }
  if (lx.size() < 4) throw analysis_error("hoelder_probe: insufficient samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double m = double(lx.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

Verdict classify_point(const Variety& V, std::span<const Rational> p,
                       const ClassifyOptions& opt) {
  Verdict v;
  const int n = V.nvars;
  if (n != 2 && n != 3) throw analysis_error("classify_point: 2 or 3 variables");
  LocalModel lm = local_model(V, p);
  if (lm.patches_through == 0) throw analysis_error("point is not on the variety");
  if (lm.f.is_zero()) throw analysis_error("degenerate variety (f = 0)");
  if (lm.constrained)
    v.caveats.push_back("patch inequality constraints are ignored by the symbolic germ");

  // (1) Regular point shortcut: single smooth patch.
  if (lm.patches_through == 1 && gradient_nonzero_exact(lm.f)) {
    v.cls = VerdictClass::RegularPoint;
    v.rule = "implicit function theorem";
    v.evidence.degree = 1;
    Polynomial lin(n);
    for (int i = 0; i < n; ++i) {
      Monomial m;
      m.e[i] = 1;
      if (const Rational* c = lm.f.coeff(m)) lin.add_term(m, *c);
    }
    v.evidence.leading_form = lin.str();
    return v;
  }

  // (2) Algebraic cone and sign-change flatness.
  HomogeneousForm h = leading_form(lm.f);
  v.evidence.leading_form = h.base.str();
  v.evidence.degree = h.degree;
  SignLocus locus = sign_change_locus(h, opt.samples, opt.seed);
  auto flat = flat_normal(h, locus);
  if (flat) v.evidence.flat_normal = *flat;

  // (3) Plane curves: the germ dichotomy needs no support hypothesis.
  if (n == 2) {
    GermReport germ = classify_germ(lm.f);
    v.evidence.germ = germ;
    switch (germ.cls) {
      case GermClass::Cusp:
        v.cls = VerdictClass::Cusp;
        v.rule = "Cor 5.5";
        break;
      case GermClass::C1:
        v.cls = VerdictClass::C1_Hypersurface;
        v.rule = "Cor 5.5";
        if (opt.run_hoelder && flat) {
          try {
            double expo = hoelder_probe(lm.f, std::vector<Rational>(std::size_t(n), Rational(0)),
                                        *flat);
            v.evidence.hoelder_exponent = expo;
            if (expo < 0.95)
              v.caveats.push_back("not C^{1,alpha} for alpha > " + std::to_string(expo) +
                                  " (fitted normal-field exponent)");
          } catch (const analysis_error&) {
          }
        }
        break;
      case GermClass::MultiBranch:
        v.cls = VerdictClass::MultiBranch;
        v.rule = "Cor 5.5 (branch count)";
        break;
      case GermClass::IsolatedPoint:
        throw analysis_error("isolated real point: no real half-branches");
    }
    // Symmetry check when the cone is a hypersurface candidate.
    try {
      Variety local = Variety::hypersurface(lm.f);
      SampledConeOptions sc;
      sc.seed = opt.seed;
      sc.tolerance = opt.tolerance;
      sc.seeds_per_scale = opt.samples;
      std::vector<Rational> origin(std::size_t(n), Rational(0));
      ConeDescriptor cone = sampled_cone(local, origin, sc);
      v.evidence.sampled = cone;
      if (hypersurface_candidate(cone) && verify_sign_change(lm.f, cone, opt.seed))
        v.evidence.symmetry = is_symmetric(symmetrize(cone), opt.tolerance);
    } catch (const analysis_error&) {
    }
    return v;
  }

  // (4) Surfaces. Sampled cone and symmetry evidence first.
  Variety local = Variety::hypersurface(lm.f);
  std::vector<Rational> origin(std::size_t(n), Rational(0));
  std::optional<ConeDescriptor> sampled;
  try {
    SampledConeOptions sc;
    sc.seed = opt.seed;
    sc.tolerance = opt.tolerance;
    sc.seeds_per_scale = std::max(opt.samples, 1024);
    sampled = sampled_cone(local, origin, sc);
    v.evidence.sampled = *sampled;
    if (hypersurface_candidate(*sampled) && verify_sign_change(lm.f, *sampled, opt.seed))
      v.evidence.symmetry = is_symmetric(symmetrize(*sampled), opt.tolerance);
  } catch (const analysis_error&) {
  }

  if (flat) {
    // Support probe over a shrinking region ladder.
    double threshold =
        opt.support_threshold_factor * (2 * opt.support_region * std::pow(0.5, opt.support_rungs - 1));
    bool support_ok = true, double_ok = true;
    for (int rung = 0; rung < opt.support_rungs; ++rung) {
      double half = opt.support_region * std::pow(0.5, rung);
      Box region = Box::centered(Vec3{0, 0, 0}, half, n);
      try {
        SampledHypersurface S = sample_surface(lm.f, region, half / 20, opt.seed);
        SupportReport rep = positive_support(S, 4 * half, threshold);
        v.evidence.support_ladder_uniform.push_back(rep.uniform_r);
        v.evidence.support_ladder_double.push_back(rep.double_uniform_r);
        if (rung == opt.support_rungs - 1) v.evidence.support = rep;
        support_ok = support_ok && rep.uniform_r >= threshold;
        double_ok = double_ok && rep.double_uniform_r >= threshold;
      } catch (const analysis_error&) {
        support_ok = double_ok = false;
      }
    }
    if (support_ok) {
      if (double_ok) {
        v.cls = VerdictClass::C11_Hypersurface;
        v.rule = "Thm 1.2 (double positive support)";
      } else {
        v.cls = VerdictClass::C1_Hypersurface;
        v.rule = "Thm 1.2";
      }
      v.caveats.push_back("positive support probed on a finite region ladder");
      return v;
    }
    // Support failed: look for a direct normal-discontinuity witness.
    auto witness = normal_jump_witness(lm.f, opt.support_region, opt.seed);
    if (witness) {
      v.cls = VerdictClass::NotC1;
      v.rule = "Thm 1.1 (tangent-plane continuity fails)";
      v.evidence.normal_jump_witness = witness;
      v.caveats.push_back("support uniform radius below threshold on the probe ladder");
      return v;
    }
    // (5) Multiplicity route (Thm 1.1).
    if (opt.run_multiplicity) {
      ConeDescriptor flat_cone = ConeDescriptor::flat(*flat, n);
      MultiplicityEstimate m =
          multiplicity(local, Vec3{0, 0, 0}, flat_cone, {}, opt.rel_resolution);
      v.evidence.multiplicity = m;
      v.caveats.push_back("tangent-cone continuity checked empirically, not proven");
      if (m.value <= 1.5 - opt.multiplicity_margin) {
        v.cls = VerdictClass::C1_Hypersurface;
        v.rule = "Thm 1.1 (multiplicity < 3/2)";
      } else {
        v.cls = VerdictClass::UnionOfC1Sheets;
        v.rule = "Thm 1.1";
        v.caveats.push_back("sheet count not certified");
      }
      return v;
    }
    v.cls = VerdictClass::Inconclusive;
    v.rule = "none";
    v.caveats.push_back("missing: positive support or multiplicity evidence");
    return v;
  }

  // (6) Non-flat cone: NotC1 when the sign-change locus is a genuine
  // non-hyperplane hypersurface or the sampled cone is asymmetric.
  std::vector<Vec3> nonflat;
  bool has_realizable = false;
  for (const auto& rf : locus.factors) {
    if (!rf.realizable) continue;
    has_realizable = true;
    for (const auto& e : rf.evidence) nonflat.push_back(e);
  }
  if (has_realizable) {
    auto dirs = sign_change_directions(locus, n, opt.samples, opt.seed);
    v.cls = VerdictClass::NotC1;
    v.rule = "Thm 1.1 (tangent cone not flat)";
    v.evidence.nonflat_witness =
        std::vector<Vec3>(dirs.begin(), dirs.begin() + std::min<std::size_t>(dirs.size(), 8));
    return v;
  }
  if (sampled && v.evidence.symmetry.has_value() && !*v.evidence.symmetry) {
    v.cls = VerdictClass::NotC1;
    v.rule = "Thm 5.4 (asymmetric cone)";
    v.evidence.nonflat_witness = sampled->directions;
    return v;
  }
  v.cls = VerdictClass::Inconclusive;
  v.rule = "none";
  v.caveats.push_back("missing: flat cone hypothesis and no non-flatness witness");
  return v;
}

std::vector<std::pair<std::vector<Rational>, Verdict>> classify_curve(
    const Polynomial& f, const Box& region, const ClassifyOptions& opt) {
  if (f.nvars() != 2) throw analysis_error("classify_curve expects a plane curve");
  std::vector<std::pair<std::vector<Rational>, Verdict>> out;
  Polynomial fx = f.derivative(0), fy = f.derivative(1);
  auto cf = CompiledPoly::from(f);
  auto cfx = CompiledPoly::from(fx);
  auto cfy = CompiledPoly::from(fy);
  auto cfxx = CompiledPoly::from(fx.derivative(0));
  auto cfxy = CompiledPoly::from(fx.derivative(1));
  auto cfyx = CompiledPoly::from(fy.derivative(0));
  auto cfyy = CompiledPoly::from(fy.derivative(1));
  auto fabs_poly = CompiledPoly::abs_from(f);

  std::set<std::pair<long, long>> seen;  // dedup grid at 1e-6
  std::vector<std::vector<Rational>> singular_points;
  const int grid = 48;
  for (int iy = 0; iy <= grid; ++iy) {
    for (int ix = 0; ix <= grid; ++ix) {
      Vec3 x{region.lo[0] + (region.hi[0] - region.lo[0]) * ix / grid,
             region.lo[1] + (region.hi[1] - region.lo[1]) * iy / grid, 0};
      // Newton on grad f = 0.
      bool converged = false;
      for (int it = 0; it < 60; ++it) {
        double gx = cfx.eval(x.data()), gy = cfy.eval(x.data());
        if (std::fabs(gx) < 1e-13 && std::fabs(gy) < 1e-13) {
          converged = true;
          break;
        }
        double a = cfxx.eval(x.data()), b = cfxy.eval(x.data());
        double c = cfyx.eval(x.data()), d = cfyy.eval(x.data());
        double det = a * d - b * c;
        if (std::fabs(det) < 1e-18) break;
        double dx = (d * gx - b * gy) / det, dy = (-c * gx + a * gy) / det;
        x[0] -= dx;
        x[1] -= dy;
        if (!region.contains(x, 1.0)) break;
      }
      if (!converged) continue;
      // On the curve as well?
      Vec3 ax{std::fabs(x[0]), std::fabs(x[1]), 0};
      if (std::fabs(cf.eval(x.data())) > 1e-8 * (1 + fabs_poly.eval(ax.data()))) continue;
      if (!region.contains(x, 1e-9)) continue;
      auto key = std::make_pair(long(std::llround(x[0] * 1e6)), long(std::llround(x[1] * 1e6)));
      if (!seen.insert(key).second) continue;
      // Exact verification after rationalization.
      auto qx = rationalize(x[0], 1000000);
      auto qy = rationalize(x[1], 1000000);
      if (!qx || !qy) continue;
      std::vector<Rational> pt{*qx, *qy};
      std::span<const Rational> ps(pt);
      if (sign(f.evaluate(ps)) != 0 || sign(fx.evaluate(ps)) != 0 || sign(fy.evaluate(ps)) != 0)
        continue;
      singular_points.push_back(pt);
    }
  }
  std::sort(singular_points.begin(), singular_points.end(),
            [](const auto& a, const auto& b) {
              if (a[0] != b[0]) return a[0] < b[0];
              return a[1] < b[1];
            });
  singular_points.erase(std::unique(singular_points.begin(), singular_points.end()),
                        singular_points.end());
  for (const auto& pt : singular_points) {
    Variety V = Variety::hypersurface(f);
    out.emplace_back(pt, classify_point(V, pt, opt));
  }
  return out;
}

}  // namespace conelab
