#include "conelab/puiseux.hpp"

#include <algorithm>
#include <cmath>

#include "conelab/factor.hpp"

namespace conelab {

namespace {

// Number-theory helpers on small ints.
long gcd_long(long a, long b) {
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

// f with the zero set's multiplicity structure flattened: the product of
// the distinct square-free factors.
Polynomial squarefree_part(const Polynomial& f) {
  FactorList fl = square_free_factor(f);
  Polynomial r = Polynomial::constant(f.nvars(), Rational(1));
  for (const auto& fac : fl.factors) r = r * fac.poly.extended(f.nvars());
  return r;
}

int order_along_axis(const Polynomial& f, int var) {
  // Order of f(..., 0, ...) in `var` (other variable set to 0); -1 if that
  // restriction is identically zero.
  int best = -1;
  for (const auto& [m, c] : f.terms()) {
    if (m.e[1 - var] != 0) continue;
    int e = m.e[var];
    if (best < 0 || e < best) best = e;
  }
  return best;
}

Polynomial transpose_xy(const Polynomial& f) {
  Polynomial r(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    Monomial t = m;
    std::swap(t.e[0], t.e[1]);
    r.add_term(t, c);
  }
  return r;
}

// Lower hull edges with positive gamma for the solve-y convention.
std::vector<NewtonEdge> lower_edges_of(const Polynomial& f) {
  // Points (j, i): j = y-exp, i = x-exp; lower hull in this frame, keeping
  // strictly falling edges (di/dj < 0 means gamma > 0).
  std::vector<std::pair<long, long>> pts;  // (j, i)
  for (const auto& [m, c] : f.terms()) pts.emplace_back(m.e[1], m.e[0]);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // Keep only minimal i per j.
  std::vector<std::pair<long, long>> mins;
  for (const auto& p : pts) {
    if (!mins.empty() && mins.back().first == p.first) continue;  // larger i, same j
    mins.push_back(p);
  }
  // Monotone-chain lower hull over (j, i).
  std::vector<std::pair<long, long>> hull;
  for (const auto& p : mins) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      long cx1 = b.first - a.first, cy1 = b.second - a.second;
      long cx2 = p.first - a.first, cy2 = p.second - a.second;
      if (cx1 * cy2 - cy1 * cx2 <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  std::vector<NewtonEdge> edges;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    auto [j1, i1] = hull[k];
    auto [j2, i2] = hull[k + 1];
    if (i2 >= i1) continue;  // gamma <= 0: no root with positive order
    Rational gamma(i1 - i2, j2 - j1);
    gamma.canonicalize();
    NewtonEdge edge;
    edge.slope = gamma;
    edge.face = Polynomial(f.nvars());
    // Terms on the supporting line i + gamma j = i1 + gamma j1.
    Rational v0 = Rational(i1) + gamma * Rational(j1);
    for (const auto& [m, c] : f.terms()) {
      if (Rational(m.e[0]) + gamma * Rational(m.e[1]) == v0) edge.face.add_term(m, c);
    }
    edges.push_back(std::move(edge));
  }
  std::sort(edges.begin(), edges.end(),
            [](const NewtonEdge& a, const NewtonEdge& b) { return a.slope < b.slope; });
  return edges;
}

// Face polynomial phi(c) = sum over edge terms of a_ij c^j, lowered so that
// phi(c) has a nonzero constant term (c = 0 is never a face root).
UniPoly face_poly(const Polynomial& face) {
  int jmin = INT_MAX, jmax = 0;
  for (const auto& [m, c] : face.terms()) {
    jmin = std::min(jmin, int(m.e[1]));
    jmax = std::max(jmax, int(m.e[1]));
  }
  UniPoly u;
  u.c.assign(std::size_t(jmax - jmin) + 1, Rational(0));
  for (const auto& [m, c] : face.terms()) u.c[std::size_t(int(m.e[1]) - jmin)] = c;
  u.trim();
  return u;
}

// x -> x^q, y -> x^p (c + y), divided by the minimal x power.
Polynomial np_substitute(const Polynomial& F, long q, long p, const Rational& c) {
  Polynomial r(2);
  for (const auto& [m, a] : F.terms()) {
    long i = m.e[0], j = m.e[1];
    long xexp = q * i + p * j;
    // (c + y)^j expansion.
    std::vector<Rational> cpows(std::size_t(j) + 1);
    cpows[0] = 1;
    for (long k = 1; k <= j; ++k) cpows[std::size_t(k)] = cpows[std::size_t(k) - 1] * c;
    Rational ck(1);
    for (long k = 0; k <= j; ++k) {
      // C(j, k)
      if (k > 0) ck = ck * Rational(j - k + 1) / Rational(k);
      Monomial t;
      if (xexp > 60000) throw analysis_error("puiseux: exponent overflow");
      t.e[0] = std::uint16_t(xexp);
      t.e[1] = std::uint16_t(k);
      r.add_term(t, a * ck * cpows[std::size_t(j - k)]);
    }
  }
  // Divide by x^min.
  int xmin = INT_MAX;
  for (const auto& [m, a] : r.terms()) xmin = std::min(xmin, int(m.e[0]));
  if (xmin == INT_MAX || xmin == 0) return r;
  Polynomial out(2);
  for (const auto& [m, a] : r.terms()) {
    Monomial t = m;
    t.e[0] = std::uint16_t(int(t.e[0]) - xmin);
    out.add_term(t, a);
  }
  return out;
}

struct ExpandState {
  Polynomial F;
  Rational scale;   // original-x units per current x unit
  Rational offset;  // exponent offset accumulated so far
  std::vector<PuiseuxTerm> terms;
  bool numeric = false;
  int depth = 0;
};

void finalize_branch(std::vector<PuiseuxBranch>& out, const ExpandState& st,
                     const Rational& cap, bool complete, bool real) {
  PuiseuxBranch b;
  b.terms = st.terms;
  b.truncation_order = cap;
  b.complete = complete;
  b.real = real;
  b.numeric = st.numeric;
  // Minimal ramification: lcm of exponent denominators.
  long e = 1;
  for (const auto& t : b.terms) {
    long den = t.exponent.get_den().get_si();
    e = e / gcd_long(e, den) * den;
  }
  b.ramification = int(e);
  out.push_back(std::move(b));
}

void expand_rec(ExpandState st, const Rational& cap, int depth_cap,
                std::vector<PuiseuxBranch>& out) {
  if (st.depth > depth_cap) {
    finalize_branch(out, st, st.offset, false, true);  // partial data
    return;
  }
  if (st.offset >= cap) {
    finalize_branch(out, st, cap, false, true);
    return;
  }
  // Zero continuation: y | F means the accumulated series is complete.
  int ymult = INT_MAX;
  for (const auto& [m, c] : st.F.terms()) ymult = std::min(ymult, int(m.e[1]));
  if (st.F.is_zero()) throw analysis_error("puiseux: zero working polynomial");
  if (ymult >= 1) {
    finalize_branch(out, st, cap, true, true);
    Polynomial rest(2);
    for (const auto& [m, c] : st.F.terms()) {
      Monomial t = m;
      t.e[1] = std::uint16_t(int(t.e[1]) - ymult);
      rest.add_term(t, c);
    }
    st.F = std::move(rest);
    if (st.F.is_constant()) return;
  }
  // If F(0, y) has order 0 in y, no further roots vanish at 0.
  int ord = order_along_axis(st.F, 1);
  if (ord == 0) return;

  for (const auto& edge : lower_edges_of(st.F)) {
    long p = edge.slope.get_num().get_si();
    long q = edge.slope.get_den().get_si();
    UniPoly phi = face_poly(edge.face);
    RationalRoots rr = rational_roots(phi);
    for (const auto& [root, mult] : rr.roots) {
      if (sign(root) == 0) continue;
      ExpandState next;
      next.F = np_substitute(st.F, q, p, root);
      next.scale = st.scale / Rational(q);
      next.offset = st.offset + edge.slope * st.scale;
      next.terms = st.terms;
      PuiseuxTerm term;
      term.exponent = next.offset;
      term.coeff = root;
      term.exact = true;
      term.coeff_approx = to_double(root);
      next.terms.push_back(term);
      next.numeric = st.numeric;
      next.depth = st.depth + 1;
      (void)mult;  // multiple roots split in the recursion
      expand_rec(std::move(next), cap, depth_cap, out);
    }
    // Irrational / complex residue: numeric leading coefficients only.
    UniPoly co = rr.cofactor;
    if (co.degree() >= 1) {
      UniPoly sf = uni_squarefree_part(co);
      auto ivals = isolate_real_roots(sf, Rational(-1000000), Rational(1000000));
      int real_count = 0;
      for (const auto& [a, b] : ivals) {
        double approx = refine_root(sf, a, b);
        if (std::fabs(approx) < 1e-300) continue;
        ++real_count;
        ExpandState next;
        next.scale = st.scale / Rational(q);
        next.offset = st.offset + edge.slope * st.scale;
        next.terms = st.terms;
        PuiseuxTerm term;
        term.exponent = next.offset;
        term.exact = false;
        term.coeff_approx = approx;
        next.terms.push_back(term);
        next.numeric = true;
        finalize_branch(out, next, next.offset, false, true);
      }
      // Conjugate pairs: bookkeeping entries flagged non-real.
      int complex_roots = co.degree() - real_count;
      for (int k = 0; k < complex_roots; ++k) {
        ExpandState next;
        next.scale = st.scale / Rational(q);
        next.offset = st.offset + edge.slope * st.scale;
        next.terms = st.terms;
        PuiseuxTerm term;
        term.exponent = next.offset;
        term.exact = false;
        next.terms.push_back(term);
        next.numeric = true;
        finalize_branch(out, next, next.offset, false, false);
      }
    }
  }
}

// Conjugate dedup for even ramification: t -> -t multiplies the coefficient
// of t^m by (-1)^m; canonicalize by making the first odd-m coefficient
// positive.
void dedup_conjugates(std::vector<PuiseuxBranch>& branches) {
  for (auto& b : branches) {
    if (b.ramification % 2 != 0 || !b.real) continue;
    int flip = 0;
    for (const auto& t : b.terms) {
      Rational me = t.exponent * Rational(b.ramification); long m = me.get_num().get_si();
      if (m % 2 != 0) {
        double v = t.exact ? to_double(t.coeff) : t.coeff_approx;
        if (v < 0) flip = 1;
        break;
      }
    }
    if (flip) {
      for (auto& t : b.terms) {
        Rational me = t.exponent * Rational(b.ramification); long m = me.get_num().get_si();
        if (m % 2 != 0) {
          if (t.exact) t.coeff = -t.coeff;
          t.coeff_approx = -t.coeff_approx;
        }
      }
    }
  }
  std::vector<PuiseuxBranch> kept;
  for (auto& b : branches) {
    bool dup = false;
    if (b.real && b.ramification % 2 == 0) {
      for (const auto& k : kept) {
        if (!k.real || k.ramification != b.ramification ||
            k.terms.size() != b.terms.size() || k.solved_var != b.solved_var)
          continue;
        bool same = true;
        for (std::size_t i = 0; i < b.terms.size() && same; ++i) {
          if (k.terms[i].exponent != b.terms[i].exponent) same = false;
          else if (k.terms[i].exact != b.terms[i].exact) same = false;
          else if (k.terms[i].exact && k.terms[i].coeff != b.terms[i].coeff) same = false;
          else if (!k.terms[i].exact &&
                   std::fabs(k.terms[i].coeff_approx - b.terms[i].coeff_approx) > 1e-12)
            same = false;
        }
        if (same) {
          dup = true;
          break;
        }
      }
    }
    if (!dup) kept.push_back(std::move(b));
  }
  branches = std::move(kept);
}

}  // namespace

NewtonPolygon newton_polygon(const Polynomial& f) {
  if (f.nvars() != 2) throw analysis_error("newton_polygon expects a plane curve");
  if (f.is_zero() || f.is_constant()) throw analysis_error("newton_polygon of a constant");
  if (sign(f.constant_term()) != 0)
    throw analysis_error("newton_polygon: germ must pass through the origin");
  NewtonPolygon np;
  Polynomial g = f;
  for (int v = 0; v < 2; ++v) {
    for (;;) {
      auto q = divide_exact(g, Polynomial::variable(2, v));
      if (!q) break;
      g = *q;
      (v == 0 ? np.axis_x_mult : np.axis_y_mult) += 1;
    }
  }
  for (const auto& [m, c] : g.terms()) np.support.emplace_back(m.e[0], m.e[1]);
  std::sort(np.support.begin(), np.support.end());
  if (!g.is_constant()) np.lower_edges = lower_edges_of(g);
  return np;
}

std::vector<PuiseuxBranch> puiseux_expand(const Polynomial& f, const PuiseuxOptions& opt) {
  if (f.nvars() != 2) throw analysis_error("puiseux_expand expects a plane curve");
  if (f.is_zero()) throw analysis_error("puiseux_expand of the zero polynomial");
  if (sign(f.constant_term()) != 0)
    throw analysis_error("puiseux_expand: germ must pass through the origin");
  Polynomial g = squarefree_part(f);
  std::vector<PuiseuxBranch> out;

  // Axis components become exact line branches.
  for (int v = 0; v < 2; ++v) {
    auto q = divide_exact(g, Polynomial::variable(2, v));
    if (q) {
      g = *q;
      PuiseuxBranch axis;
      axis.axis = true;
      axis.solved_var = v;  // the axis v = 0: solved variable is v itself
      axis.complete = true;
      axis.real = true;
      axis.ramification = 1;
      out.push_back(axis);
    }
  }
  if (g.is_constant()) return out;
  if (sign(g.constant_term()) != 0) return out;  // remaining factor misses o

  int ord_y = order_along_axis(g, 1);
  int ord_x = order_along_axis(g, 0);
  int solve_var = ord_y <= ord_x ? 1 : 0;
  Polynomial work = solve_var == 1 ? g : transpose_xy(g);

  auto edges = lower_edges_of(work);
  if (edges.empty()) return out;
  Rational cap = opt.order ? *opt.order : edges.front().slope * 2 + 2;

  ExpandState st;
  st.F = work;
  st.scale = 1;
  st.offset = 0;
  std::vector<PuiseuxBranch> raw;
  expand_rec(std::move(st), cap, opt.depth_cap, raw);
  for (auto& b : raw) b.solved_var = solve_var;
  dedup_conjugates(raw);
  for (auto& b : raw) out.push_back(std::move(b));
  return out;
}

std::vector<HalfBranch> half_branches(const std::vector<PuiseuxBranch>& branches) {
  std::vector<HalfBranch> out;
  for (std::size_t bi = 0; bi < branches.size(); ++bi) {
    const PuiseuxBranch& b = branches[bi];
    if (!b.real) continue;
    if (b.axis) {
      // The line {v = 0}: rays along the other coordinate axis.
      for (int s : {+1, -1}) {
        HalfBranch h;
        h.branch_index = bi;
        h.t_sign = s;
        int other = 1 - b.solved_var;
        h.ray_exact[std::size_t(b.solved_var)] = 0;
        h.ray_exact[std::size_t(other)] = s;
        h.tangent_ray = Vec3{to_double(h.ray_exact[0]), to_double(h.ray_exact[1]), 0};
        h.exact = true;
        out.push_back(h);
      }
      continue;
    }
    if (b.terms.empty()) continue;
    const PuiseuxTerm& lead = b.terms.front();
    long e = b.ramification;
    Rational me1 = lead.exponent * Rational(e); long m1 = me1.get_num().get_si();
    for (int s : {+1, -1}) {
      HalfBranch h;
      h.branch_index = bi;
      h.t_sign = s;
      h.exact = lead.exact;
      // Secant direction of (t^e, c t^m1 + ...) as t -> 0 from the given
      // side, in (parameter, dependent) coordinates.
      Rational par, dep;
      double c_approx = lead.coeff_approx;
      Rational c_exact = lead.exact ? lead.coeff : Rational(0);
      int sp = (s < 0 && e % 2 != 0) ? -1 : 1;
      int sd = (s < 0 && m1 % 2 != 0) ? -1 : 1;
      if (e < m1) {
        par = sp;
        dep = 0;
      } else if (e > m1) {
        par = 0;
        dep = lead.exact ? Rational(sd) * Rational(sign(c_exact))
                         : Rational(sd * (c_approx > 0 ? 1 : -1));
      } else {
        par = sp;
        dep = lead.exact ? Rational(sd) * c_exact : Rational(0);
      }
      std::size_t par_slot = b.solved_var == 1 ? 0 : 1;
      h.ray_exact[par_slot] = par;
      h.ray_exact[1 - par_slot] = dep;
      Vec3 v{to_double(h.ray_exact[0]), to_double(h.ray_exact[1]), 0};
      if (!lead.exact && e == m1) {
        v[1 - par_slot] = sd * c_approx;
        h.exact = false;
      }
      h.tangent_ray = normalized(v, 2);
      out.push_back(h);
    }
  }
  return out;
}

namespace {

// Exact ray comparison: same direction (positively proportional).
bool same_ray(const HalfBranch& a, const HalfBranch& b) {
  if (a.exact && b.exact) {
    const auto& u = a.ray_exact;
    const auto& v = b.ray_exact;
    if (u[0] * v[1] != u[1] * v[0]) return false;
    return sign(u[0]) == sign(v[0]) && sign(u[1]) == sign(v[1]);
  }
  return angular_distance(a.tangent_ray, b.tangent_ray, 2) < 1e-9;
}

bool opposite_ray(const HalfBranch& a, const HalfBranch& b) {
  HalfBranch neg = b;
  neg.ray_exact[0] = -neg.ray_exact[0];
  neg.ray_exact[1] = -neg.ray_exact[1];
  neg.tangent_ray = mul(neg.tangent_ray, -1.0);
  return same_ray(a, neg);
}

}  // namespace

GermReport classify_germ(const Polynomial& f, const PuiseuxOptions& opt) {
  if (f.nvars() != 2) throw analysis_error("classify_germ expects a plane curve");
  if (sign(f.constant_term()) != 0)
    throw analysis_error("classify_germ: origin is not on the curve");
  GermReport rep;
  rep.polygon = newton_polygon(f);
  rep.branches = puiseux_expand(f, opt);
  rep.half_branch_list = half_branches(rep.branches);
  for (const auto& h : rep.half_branch_list) {
    bool dup = false;
    for (const auto& r : rep.ray_fan)
      if (angular_distance(r, h.tangent_ray, 2) < 1e-9) dup = true;
    if (!dup) rep.ray_fan.push_back(h.tangent_ray);
  }
  if (rep.half_branch_list.empty()) {
    rep.cls = GermClass::IsolatedPoint;
  } else if (rep.half_branch_list.size() == 2) {
    const auto& h0 = rep.half_branch_list[0];
    const auto& h1 = rep.half_branch_list[1];
    if (same_ray(h0, h1))
      rep.cls = GermClass::Cusp;
    else if (opposite_ray(h0, h1))
      rep.cls = GermClass::C1;
    else
      rep.cls = GermClass::MultiBranch;
  } else {
    rep.cls = GermClass::MultiBranch;
  }
  return rep;
}

Rational residual_valuation(const Polynomial& f, const PuiseuxBranch& branch) {
  if (branch.numeric || branch.axis)
    throw analysis_error("residual check needs an exact non-axis branch");
  long e = branch.ramification;
  // Substitute (x, y) = (t^e, sum c_k t^(e * exp_k)) as truncated series.
  // Work with univariate polynomials in t.
  UniPoly series;  // dependent variable
  for (const auto& t : branch.terms) {
    Rational me = t.exponent * Rational(e); long m = me.get_num().get_si();
    if (std::size_t(m) >= series.c.size()) series.c.resize(std::size_t(m) + 1, Rational(0));
    series.c[std::size_t(m)] += t.coeff;
  }
  series.trim();
  UniPoly param;  // t^e
  param.c.assign(std::size_t(e) + 1, Rational(0));
  param.c[std::size_t(e)] = 1;

  Polynomial g = branch.solved_var == 1 ? f : transpose_xy(f);
  // Horner in y with UniPoly coefficients in t.
  int dy = g.degree_in(1);
  std::vector<UniPoly> by_y(std::size_t(dy) + 1);
  for (const auto& [m, c] : g.terms()) {
    UniPoly& u = by_y[m.e[1]];
    std::size_t xe = std::size_t(m.e[0]) * std::size_t(e);
    if (u.c.size() <= xe) u.c.resize(xe + 1, Rational(0));
    u.c[xe] += c;
  }
  for (auto& u : by_y) u.trim();
  UniPoly acc;
  for (int k = dy; k >= 0; --k) acc = acc * series + by_y[std::size_t(k)];
  acc.trim();
  if (acc.is_zero()) return Rational(1000000);  // vanishes identically
  std::size_t val = 0;
  while (val < acc.c.size() && sign(acc.c[val]) == 0) ++val;
  Rational tv(long(val), e);
  tv.canonicalize();
  return tv;
}

}  // namespace conelab
