#include "conelab/projective.hpp"

#include <algorithm>
#include <cmath>

#include "conelab/factor.hpp"
#include "conelab/unipoly.hpp"

namespace conelab {

namespace {

// Exact f(a + t u) as a univariate polynomial in t.
UniPoly restrict_to_line(const Polynomial& f, std::span<const Rational> a,
                         std::span<const Rational> u) {
  UniPoly acc;
  for (const auto& [m, c] : f.terms()) {
    UniPoly term = UniPoly::constant(c);
    for (int i = 0; i < f.nvars(); ++i) {
      UniPoly lin;
      lin.c = {a[std::size_t(i)], u[std::size_t(i)]};
      lin.trim();
      for (int k = 0; k < m.e[i]; ++k) term = term * lin;
    }
    acc = acc + term;
  }
  acc.trim();
  return acc;
}

Rational cauchy_bound(const UniPoly& g) {
  // All real roots lie in [-T, T], T = 1 + max |c_i / c_lead|.
  Rational lead = g.c.back();
  Rational best(0);
  for (std::size_t i = 0; i + 1 < g.c.size(); ++i) {
    Rational r = abs(g.c[i] / lead);
    if (r > best) best = r;
  }
  return best + 1;
}

}  // namespace

Polynomial p_transform(const Polynomial& f, int d) {
  int n = f.nvars();
  if (n < 2) throw analysis_error("p_transform needs at least 2 variables");
  if (d < f.degree()) throw analysis_error("p_transform: degree below deg f");
  Polynomial r(n);
  for (const auto& [m, c] : f.terms()) {
    Monomial t = m;
    t.e[n - 1] = std::uint16_t(d - m.total());
    r.add_term(t, c);
  }
  return r;
}

ProjectivePoly homogenize(const Polynomial& f) {
  if (f.is_zero()) throw analysis_error("homogenize of the zero polynomial");
  int n = f.nvars();
  int d = f.degree();
  Polynomial r(n + 1);
  for (const auto& [m, c] : f.terms()) {
    Monomial t = m;
    t.e[n] = std::uint16_t(d - m.total());
    r.add_term(t, c);
  }
  return ProjectivePoly{r, d};
}

Polynomial dehomogenize(const ProjectivePoly& F, int chart) {
  int N = F.base.nvars();
  if (chart < 0 || chart >= N) throw analysis_error("dehomogenize: bad chart");
  Polynomial r(N - 1);
  for (const auto& [m, c] : F.base.terms()) {
    Monomial t;
    for (int i = 0, k = 0; i < N; ++i) {
      if (i == chart) continue;
      t.e[k++] = m.e[i];
    }
    r.add_term(t, c);
  }
  return r;
}

std::array<int, 3> quadratic_inertia(const Polynomial& h) {
  int n = h.nvars();
  if (h.degree() != 2 || h.min_degree() != 2)
    throw analysis_error("quadratic_inertia expects a quadratic form");
  // Symmetric matrix of the form.
  std::vector<std::vector<Rational>> M(std::size_t(n),
                                       std::vector<Rational>(std::size_t(n), Rational(0)));
  for (const auto& [m, c] : h.terms()) {
    int idx[2], k = 0;
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < m.e[i]; ++e) idx[k++] = i;
    if (idx[0] == idx[1])
      M[std::size_t(idx[0])][std::size_t(idx[0])] += c;
    else {
      M[std::size_t(idx[0])][std::size_t(idx[1])] += c / 2;
      M[std::size_t(idx[1])][std::size_t(idx[0])] += c / 2;
    }
  }
  // Congruence diagonalization.
  std::array<int, 3> inert{0, 0, 0};
  for (int k = 0; k < n; ++k) {
    if (sign(M[std::size_t(k)][std::size_t(k)]) == 0) {
      // Find a pivot to mix in.
      int j = -1;
      for (int i = k + 1; i < n; ++i)
        if (sign(M[std::size_t(k)][std::size_t(i)]) != 0) {
          j = i;
          break;
        }
      if (j >= 0) {
        for (int i = 0; i < n; ++i) M[std::size_t(k)][std::size_t(i)] += M[std::size_t(j)][std::size_t(i)];
        for (int i = 0; i < n; ++i) M[std::size_t(i)][std::size_t(k)] += M[std::size_t(i)][std::size_t(j)];
      }
    }
    Rational piv = M[std::size_t(k)][std::size_t(k)];
    if (sign(piv) == 0) continue;
    inert[sign(piv) > 0 ? 0 : 1] += 1;
    for (int i = k + 1; i < n; ++i) {
      Rational factor = M[std::size_t(i)][std::size_t(k)] / piv;
      if (sign(factor) == 0) continue;
      for (int j2 = k; j2 < n; ++j2)
        M[std::size_t(i)][std::size_t(j2)] -= factor * M[std::size_t(k)][std::size_t(j2)];
      for (int j2 = k; j2 < n; ++j2)
        M[std::size_t(j2)][std::size_t(i)] -= factor * M[std::size_t(j2)][std::size_t(k)];
    }
  }
  inert[2] = n - inert[0] - inert[1];
  return inert;
}

namespace {

// Chart analysis of one (exact) point at infinity.
InfinityPoint analyze_point(const ProjectivePoly& F, int chart,
                            const std::vector<Rational>& chart_point, const Vec3& dir,
                            bool exact) {
  InfinityPoint ip;
  ip.chart = chart;
  ip.point = chart_point;
  ip.direction = dir;
  ip.exact = exact;
  Polynomial g = dehomogenize(F, chart);
  Polynomial at = g.translate(std::span<const Rational>(chart_point));
  if (sign(at.constant_term()) != 0) {
    ip.verdict = "off_closure";
    return ip;
  }
  bool smooth = false;
  for (int i = 0; i < at.nvars() && !smooth; ++i) {
    Monomial m;
    m.e[i] = 1;
    if (at.coeff(m)) smooth = true;
  }
  if (smooth) {
    ip.verdict = "smooth";
    return ip;
  }
  HomogeneousForm h = leading_form(at);
  ip.germ = h.base;
  if (h.degree == 2) {
    auto inert = quadratic_inertia(h.base);
    ip.inertia = inert;
    int pos = inert[0], neg = inert[1];
    if (inert[2] == 0 && pos >= 1 && neg >= 1 &&
        (pos + neg == at.nvars()) && std::min(pos, neg) == 1 && at.nvars() == 3) {
      ip.verdict = "conical_singularity";
      return ip;
    }
  }
  SignLocus locus = sign_change_locus(h, 512, 42);
  if (flat_normal(h, locus)) {
    ip.verdict = "C1_flat_cone";
    return ip;
  }
  ip.verdict = "singular";
  return ip;
}

}  // namespace

ClosureReport projective_closure(const Polynomial& f, int samples, std::uint64_t seed) {
  if (f.is_zero()) throw analysis_error("projective closure of the zero polynomial");
  ClosureReport rep;
  rep.homogeneous = homogenize(f);
  int n = f.nvars();
  Polynomial top = f.homogeneous_part(f.degree());

  struct Candidate {
    Vec3 dir;
    std::vector<Rational> exact;  // affine direction coordinates, when known
    bool is_exact = false;
  };
  std::vector<Candidate> cands;

  if (n == 2) {
    // Exact roots of the top form in two charts.
    for (int chart = 0; chart < 2; ++chart) {
      UniPoly u;
      u.c.assign(std::size_t(top.degree()) + 1, Rational(0));
      for (const auto& [m, c] : top.terms()) u.c[m.e[chart == 0 ? 1 : 0]] = c;
      u.trim();
      if (u.degree() < 0) continue;
      auto rr = rational_roots(u);
      for (const auto& [root, mult] : rr.roots) {
        Candidate c;
        c.is_exact = true;
        c.exact = chart == 0 ? std::vector<Rational>{Rational(1), root}
                             : std::vector<Rational>{root, Rational(1)};
        c.dir = normalized(Vec3{to_double(c.exact[0]), to_double(c.exact[1]), 0}, 2);
        cands.push_back(std::move(c));
        (void)mult;
      }
      if (rr.cofactor.degree() >= 1) {
        for (const auto& [a, b] :
             isolate_real_roots(rr.cofactor, Rational(-1000000), Rational(1000000))) {
          double t = refine_root(rr.cofactor, a, b);
          Candidate c;
          c.dir = chart == 0 ? normalized(Vec3{1, t, 0}, 2) : normalized(Vec3{t, 1, 0}, 2);
          cands.push_back(std::move(c));
        }
      }
    }
  } else {
    // Sampled zero directions of the top form, antipodally dedup'd, then
    // rationalized when the polish lands on small-denominator coordinates.
    auto t = ProjectionTarget::from(top);
    Rng rng(seed);
    for (const auto& d0 : sphere_grid(3, std::max(samples, 64))) {
      Vec3 u = d0;
      for (int i = 0; i < 3; ++i) u[i] += 0.01 * rng.uniform(-1, 1);
      u = normalized(u, 3);
      auto z = polish_zero_on_sphere(t, u, 1e-11);
      if (!z) continue;
      Candidate c;
      c.dir = (*z)[0] < -1e-9 || ((*z)[0] < 1e-9 && (*z)[1] < 0) ? mul(*z, -1.0) : *z;
      cands.push_back(c);
    }
    // Singular candidates: minimize |grad F|^2 on the infinity sphere by
    // walking sampled zeros toward small chart gradients.
    // (Handled below by exactness polishing per candidate.)
  }

  // Dedup directions.
  std::vector<Candidate> uniq;
  for (const auto& c : cands) {
    bool dup = false;
    for (const auto& o : uniq) {
      double a = angular_distance(c.dir, o.dir, n);
      if (a < 1e-2 || a > M_PI - 1e-2) {
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(c);
  }

  for (auto& c : uniq) {
    // Chart: largest coordinate.
    int chart = 0;
    for (int i = 1; i < n; ++i)
      if (std::fabs(c.dir[i]) > std::fabs(c.dir[chart])) chart = i;
    std::vector<Rational> chart_point;  // n coordinates: affine others + w=0
    bool exact = false;
    if (c.is_exact) {
      Rational den = c.exact[std::size_t(chart)];
      for (int i = 0; i < n; ++i) {
        if (i == chart) continue;
        chart_point.push_back(c.exact[std::size_t(i)] / den);
      }
      chart_point.push_back(Rational(0));  // w
      exact = true;
    } else {
      // Try small-denominator rationalization, verified on the top form.
      std::vector<Rational> guess;
      bool ok = true;
      double dc = c.dir[chart];
      for (int i = 0; i < n && ok; ++i) {
        if (i == chart) continue;
        auto q = rationalize(c.dir[i] / dc, 64);
        if (!q) ok = false;
        else
          guess.push_back(*q);
      }
      if (ok) {
        std::vector<Rational> full;
        int k = 0;
        for (int i = 0; i < n; ++i) {
          if (i == chart)
            full.push_back(Rational(1));
          else
            full.push_back(guess[std::size_t(k++)]);
        }
        if (sign(top.evaluate(std::span<const Rational>(full))) == 0) {
          chart_point = guess;
          chart_point.push_back(Rational(0));
          exact = true;
        }
      }
      if (!exact) {
        for (int i = 0; i < n; ++i) {
          if (i == chart) continue;
          auto q = rationalize(c.dir[i] / dc, 1000000000);
          chart_point.push_back(q ? *q : Rational(0));
        }
        chart_point.push_back(Rational(0));
      }
    }
    rep.points.push_back(analyze_point(rep.homogeneous, chart, chart_point, c.dir, exact));
  }
  // Deterministic order: by chart then direction.
  std::sort(rep.points.begin(), rep.points.end(), [](const InfinityPoint& a, const InfinityPoint& b) {
    if (a.chart != b.chart) return a.chart < b.chart;
    return std::lexicographical_compare(a.direction.begin(), a.direction.end(),
                                        b.direction.begin(), b.direction.end());
  });
  return rep;
}

DirectionCone recession_cone_sample(const SampledHypersurface& S, const ConvexityReport& cvx,
                                    std::vector<double> t_ladder, int grid) {
  if (!cvx.convex) throw analysis_error("recession cone needs a convex sample cloud");
  double diam = S.region.diameter();
  if (t_ladder.empty()) t_ladder = {0.5 * diam, diam, 2 * diam};
  std::sort(t_ladder.begin(), t_ladder.end());
  const double eps = 1e-6 * diam * (1 + t_ladder.back() / diam);

  // Per-sample hyperplane slack: m_x = max_s <s - x, N_x>.
  std::size_t m = S.size();
  std::vector<double> slack(m);
  std::vector<Vec3> nrm(m);
  for (std::size_t i = 0; i < m; ++i) nrm[i] = outward_normal(S, cvx, i);
  parallel_for(m, [&](std::size_t i) {
    double u[3] = {nrm[i][0], nrm[i][1], nrm[i][2]};
    double best = 0;
    max_dot(S.points, u, &best);
    slack[i] = best - dot(S.point(i), nrm[i], S.n);
  });

  DirectionCone cone;
  cone.kind = DirectionCone::Kind::recession;
  for (const auto& u : sphere_grid(S.n, grid)) {
    bool ok = true;
    int passed = 0;
    for (std::size_t i = 0; i < m && ok; ++i) {
      double du = dot(u, nrm[i], S.n);
      double t = du > 0 ? t_ladder.back() : t_ladder.front();
      if (slack[i] + t * du > eps) ok = false;
      else
        ++passed;
    }
    if (!ok) continue;
    bool dup = false;
    for (std::size_t k = 0; k < cone.directions.size(); ++k)
      if (angular_distance(u, cone.directions[k], S.n) < 1e-2) {
        dup = true;
        break;
      }
    if (!dup) {
      cone.directions.push_back(u);
      cone.confidence.push_back(passed);
    }
  }
  return cone;
}

EntireGraphResult entire_graph_direction(const Polynomial& f, const SampledHypersurface& S,
                                         const ConvexityReport& cvx, int k_lines,
                                         std::uint64_t seed) {
  EntireGraphResult res;
  if (!cvx.convex) {
    res.note = "convexity probe failed";
    return res;
  }
  DirectionCone rc = recession_cone_sample(S, cvx, {}, S.n == 2 ? 720 : 1500);
  if (rc.directions.empty()) {
    res.note = "empty recession cone (compact region)";
    return res;
  }
  // Candidates: u in rc with -u near a sampled outward normal.
  std::vector<Vec3> candidates;
  for (const auto& u : rc.directions) {
    Vec3 nu = mul(u, -1.0);
    for (std::size_t i = 0; i < S.size(); ++i) {
      if (angular_distance(nu, outward_normal(S, cvx, i), S.n) < 1e-2) {
        candidates.push_back(u);
        break;
      }
    }
  }
  if (candidates.empty()) {
    res.note = "recession cone does not meet the reflected normal cone";
    return res;
  }

  const int n = S.n;
  double diam = S.region.diameter();
  for (const auto& u0 : candidates) {
    // Rational direction for exact root counting.
    std::vector<Rational> u(std::size_t(n), Rational(0));
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      auto q = rationalize(u0[i], 4096);
      if (!q) ok = false;
      else
        u[std::size_t(i)] = *q;
    }
    if (!ok) continue;
    Rng rng(seed);
    int singles = 0;
    for (int line = 0; line < k_lines; ++line) {
      // Base points range well beyond the sampled region: the entire-graph
      // property quantifies over every parallel line.
      std::vector<Rational> a(std::size_t(n), Rational(0));
      for (int i = 0; i < n; ++i) {
        double mid = 0.5 * (S.region.lo[i] + S.region.hi[i]);
        double coord = mid + 2.0 * diam * rng.uniform(-1, 1);
        a[std::size_t(i)] = *rationalize(coord, 1 << 20);
      }
      UniPoly g = restrict_to_line(f, a, u);
      if (g.degree() < 1) break;  // line inside the variety or missing it
      Rational T = cauchy_bound(g);
      auto roots = isolate_real_roots(g, -T, T);
      int on_branch = 0;
      for (const auto& [lo, hi] : roots) {
        double t = refine_root(g, lo, hi);
        Vec3 z{};
        for (int i = 0; i < n; ++i) z[i] = to_double(a[std::size_t(i)]) + t * u0[i];
        // Supporting-halfspace membership: max <z - x, N_x> <= eps.
        double worst = -1e300;
        for (std::size_t i = 0; i < S.size(); ++i) {
          Vec3 d = sub(z, S.point(i));
          worst = std::max(worst, dot(d, outward_normal(S, cvx, i), n));
        }
        if (worst <= 1e-3 * diam) ++on_branch;
      }
      res.lines_tested = line + 1;
      if (on_branch != 1) break;  // candidate refuted
      ++singles;
    }
    res.lines_single = singles;
    if (res.lines_tested == k_lines && singles == k_lines) {
      res.direction = u0;
      res.note = "verified entire graph direction";
      return res;
    }
  }
  res.note = "not an entire graph (some test lines miss the branch or hit it twice)";
  return res;
}

}  // namespace conelab
