#include "conelab/factor.hpp"

#include <algorithm>

#include "conelab/unipoly.hpp"

namespace conelab {

namespace {

int highest_var(const Polynomial& f) {
  for (int v = f.nvars() - 1; v >= 0; --v)
    if (f.degree_in(v) > 0) return v;
  return -1;
}

// Univariate view in `var`: coefficient polynomials with e[var] == 0.
std::vector<Polynomial> to_uni(const Polynomial& f, int var) {
  std::vector<Polynomial> u(std::size_t(f.degree_in(var)) + 1, Polynomial(f.nvars()));
  for (const auto& [m, c] : f.terms()) {
    Monomial t = m;
    int e = t.e[var];
    t.e[var] = 0;
    u[std::size_t(e)].add_term(t, c);
  }
  while (u.size() > 1 && u.back().is_zero()) u.pop_back();
  return u;
}

Polynomial from_uni(const std::vector<Polynomial>& u, int var, int nvars) {
  Polynomial f(nvars);
  for (std::size_t e = 0; e < u.size(); ++e) {
    for (const auto& [m, c] : u[e].terms()) {
      Monomial t = m;
      t.e[var] = std::uint16_t(e);
      f.add_term(t, c);
    }
  }
  return f;
}

Polynomial content_wrt(const Polynomial& f, int var) {
  Polynomial g(f.nvars());
  for (const auto& coeff : to_uni(f, var)) {
    if (coeff.is_zero()) continue;
    g = poly_gcd(g, coeff);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

Polynomial primitive_part(const Polynomial& f, int var) {
  Polynomial cont = content_wrt(f, var);
  if (cont.is_zero()) return f;
  auto q = divide_exact(f, cont);
  if (!q) throw poly_error("internal: content does not divide");
  return *q;
}

// Pseudo-remainder of f by g in `var` (both with positive degree in var).
Polynomial prem(const Polynomial& f, const Polynomial& g, int var) {
  auto uf = to_uni(f, var);
  auto ug = to_uni(g, var);
  int df = int(uf.size()) - 1, dg = int(ug.size()) - 1;
  const Polynomial& lg = ug.back();
  while (df >= dg && !(uf.size() == 1 && uf[0].is_zero())) {
    Polynomial lr = uf.back();
    // r <- lg * r - lr * t^(df-dg) * g
    std::vector<Polynomial> next(std::size_t(df), Polynomial(f.nvars()));
    if (df == 0) next.assign(1, Polynomial(f.nvars()));
    for (int i = 0; i < df; ++i) next[std::size_t(i)] = uf[std::size_t(i)] * lg;
    for (int i = 0; i < dg; ++i) {
      std::size_t k = std::size_t(i + df - dg);
      next[k] -= lr * ug[std::size_t(i)];
    }
    uf = std::move(next);
    while (uf.size() > 1 && uf.back().is_zero()) uf.pop_back();
    df = int(uf.size()) - 1;
    if (uf.size() == 1 && uf[0].is_zero()) break;
  }
  return from_uni(uf, var, f.nvars());
}

void sqfree_rec(const Polynomial& f, std::vector<Factor>& out);

// Yun's algorithm in `var`; pp is primitive in var with positive var-degree.
void yun(const Polynomial& pp, int var, std::vector<Factor>& out) {
  Polynomial d1 = pp.derivative(var);
  Polynomial a = poly_gcd(pp, d1);
  auto b = divide_exact(pp, a);
  auto c = divide_exact(d1, a);
  if (!b || !c) throw poly_error("internal: Yun division failed");
  Polynomial B = *b, D = *c - B.derivative(var);
  int i = 1;
  while (!B.is_constant()) {
    Polynomial P = poly_gcd(B, D);
    if (!P.is_constant()) out.push_back({normalize_primitive(P), i});
    auto nb = divide_exact(B, P);
    auto nc = divide_exact(D, P);
    if (!nb || !nc) throw poly_error("internal: Yun division failed");
    B = *nb;
    D = *nc - B.derivative(var);
    ++i;
    if (i > 512) throw poly_error("internal: Yun did not terminate");
  }
}

void sqfree_rec(const Polynomial& f, std::vector<Factor>& out) {
  if (f.is_constant()) return;
  int v = highest_var(f);
  Polynomial cont = content_wrt(f, v);
  auto pp = divide_exact(f, cont);
  if (!pp) throw poly_error("internal: content does not divide");
  if (!pp->is_constant()) yun(*pp, v, out);
  sqfree_rec(cont, out);
}

}  // namespace

int poly_cmp(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  auto ia = a.terms().begin(), ib = b.terms().begin();
  GradedLexGreater lt;
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (lt(ia->first, ib->first)) return 1;
    if (lt(ib->first, ia->first)) return -1;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
  }
  if (ia != a.terms().end()) return 1;
  if (ib != b.terms().end()) return -1;
  return 0;
}

Polynomial normalize_primitive(const Polynomial& f) {
  if (f.is_zero()) return f;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : f.terms()) {
    num_gcd = gcd(num_gcd, c.get_num());
    den_lcm = lcm(den_lcm, c.get_den());
  }
  Rational scale{den_lcm, num_gcd};
  scale.canonicalize();
  Polynomial r = f;
  r *= scale;
  if (sign(r.terms().begin()->second) < 0) r *= Rational(-1);
  return r;
}

Polynomial poly_gcd(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero()) return g.is_zero() ? g : normalize_primitive(g);
  if (g.is_zero()) return normalize_primitive(f);
  if (f.is_constant() || g.is_constant())
    return Polynomial::constant(std::max(f.nvars(), g.nvars()), Rational(1));

  int vf = highest_var(f), vg = highest_var(g);
  if (vf != vg) {
    // The higher variable occurs in only one argument; the gcd divides the
    // other argument's coefficients.
    if (vf > vg) return poly_gcd(content_wrt(f, vf), g);
    return poly_gcd(f, content_wrt(g, vg));
  }
  int v = vf;
  Polynomial cf = content_wrt(f, v), cg = content_wrt(g, v);
  Polynomial c = poly_gcd(cf, cg);
  auto a = divide_exact(f, cf);
  auto b = divide_exact(g, cg);
  if (!a || !b) throw poly_error("internal: content does not divide");
  Polynomial A = *a, B = *b;
  if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
  for (;;) {
    Polynomial r = prem(A, B, v);
    if (r.is_zero()) return normalize_primitive(c * primitive_part(B, v));
    if (r.degree_in(v) == 0)
      return normalize_primitive(c);
    A = std::move(B);
    B = primitive_part(r, v);
  }
}

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw poly_error("division by the zero polynomial");
  int nvars = std::max(f.nvars(), g.nvars());
  if (f.is_zero()) return Polynomial(nvars);
  if (g.is_constant()) {
    Polynomial r = f.extended(nvars);
    r *= 1 / g.constant_term();
    return r;
  }
  int v = highest_var(g);
  auto uf = to_uni(f.extended(nvars), v);
  auto ug = to_uni(g.extended(nvars), v);
  int dg = int(ug.size()) - 1;
  std::vector<Polynomial> q;
  while (true) {
    while (uf.size() > 1 && uf.back().is_zero()) uf.pop_back();
    int df = int(uf.size()) - 1;
    if (uf.size() == 1 && uf[0].is_zero()) break;
    if (df < dg) return std::nullopt;
    auto t = divide_exact(uf.back(), ug.back());
    if (!t) return std::nullopt;
    if (q.size() < std::size_t(df - dg + 1)) q.resize(std::size_t(df - dg + 1), Polynomial(nvars));
    q[std::size_t(df - dg)] = *t;
    for (int i = 0; i <= dg; ++i) uf[std::size_t(i + df - dg)] -= *t * ug[std::size_t(i)];
    if (!uf.back().is_zero()) return std::nullopt;  // leading term must cancel
  }
  if (q.empty()) q.assign(1, Polynomial(nvars));
  return from_uni(q, v, nvars);
}

Polynomial FactorList::reassemble(int nvars) const {
  Polynomial r = Polynomial::constant(nvars, constant);
  for (const auto& f : factors) r = r * f.poly.extended(nvars).pow(unsigned(f.multiplicity));
  return r;
}

void split_linear_factors(FactorList& fl) {
  std::vector<Factor> out;
  for (auto& fac : fl.factors) {
    Polynomial g = fac.poly;
    if (g.degree() <= 1 || g.nvars() > 2 || g.degree() != g.min_degree()) {
      out.push_back(fac);
      continue;
    }
    // Bivariate homogeneous: rational-root split of g(1,t), plus x^k.
    int n = g.nvars();
    int deg = g.degree();
    UniPoly u;
    u.c.assign(std::size_t(deg) + 1, Rational(0));
    for (const auto& [m, c] : g.terms()) u.c[m.e[1]] = c;
    u.trim();
    int xk = deg - u.degree();  // factor x^xk
    auto rr = rational_roots(u);
    Polynomial rem = g;
    for (int k = 0; k < xk; ++k) {
      auto q = divide_exact(rem, Polynomial::variable(n, 0));
      rem = *q;
    }
    if (xk > 0) out.push_back({Polynomial::variable(n, 0), fac.multiplicity * xk});
    for (const auto& [root, mult] : rr.roots) {
      // root t0 of g(1,t) gives the linear factor y - t0 x.
      Polynomial lin = Polynomial::variable(n, 1) -
                       Polynomial::variable(n, 0) * Polynomial::constant(n, root);
      lin = normalize_primitive(lin);
      for (int k = 0; k < mult; ++k) {
        auto q = divide_exact(rem, lin);
        rem = *q;
      }
      out.push_back({lin, fac.multiplicity * mult});
    }
    if (!rem.is_constant()) out.push_back({normalize_primitive(rem), fac.multiplicity});
  }
  // Merge associates and sort canonically.
  std::sort(out.begin(), out.end(),
            [](const Factor& a, const Factor& b) { return poly_cmp(a.poly, b.poly) < 0; });
  std::vector<Factor> merged;
  for (auto& f : out) {
    if (!merged.empty() && poly_cmp(merged.back().poly, f.poly) == 0)
      merged.back().multiplicity += f.multiplicity;
    else
      merged.push_back(f);
  }
  fl.factors = std::move(merged);
}

bool try_divide_candidate(FactorList& fl, const Polynomial& candidate) {
  if (candidate.is_constant()) return false;
  Polynomial cand = normalize_primitive(candidate);
  bool split = false;
  std::vector<Factor> out;
  for (const auto& fac : fl.factors) {
    if (fac.poly.degree() < cand.degree()) {
      out.push_back(fac);
      continue;
    }
    Polynomial rem = fac.poly;
    int count = 0;
    for (;;) {
      auto q = divide_exact(rem, cand.extended(rem.nvars()));
      if (!q) break;
      rem = *q;
      ++count;
    }
    if (count == 0) {
      out.push_back(fac);
      continue;
    }
    split = true;
    out.push_back({cand, fac.multiplicity * count});
    if (rem.is_constant()) {
      Rational c = rem.constant_term();
      for (int k = 0; k < fac.multiplicity; ++k) fl.constant *= c;
    } else {
      Polynomial norm = normalize_primitive(rem);
      Rational c = rem.terms().begin()->second / norm.terms().begin()->second;
      for (int k = 0; k < fac.multiplicity; ++k) fl.constant *= c;
      out.push_back({norm, fac.multiplicity});
    }
  }
  if (split) {
    std::sort(out.begin(), out.end(),
              [](const Factor& a, const Factor& b) { return poly_cmp(a.poly, b.poly) < 0; });
    std::vector<Factor> merged;
    for (auto& f : out) {
      if (!merged.empty() && poly_cmp(merged.back().poly, f.poly) == 0)
        merged.back().multiplicity += f.multiplicity;
      else
        merged.push_back(f);
    }
    fl.factors = std::move(merged);
  }
  return split;
}

FactorList square_free_factor(const Polynomial& f, int degree_cap) {
  if (f.is_zero()) throw poly_error("square_free_factor of the zero polynomial");
  if (f.degree() > degree_cap)
    throw factor_timeout("factorization timeout: degree cap exceeded");
  FactorList fl;
  if (!f.is_constant()) sqfree_rec(f, fl.factors);
  split_linear_factors(fl);
  Polynomial prod = Polynomial::constant(f.nvars(), Rational(1));
  for (const auto& fac : fl.factors) prod = prod * fac.poly.extended(f.nvars()).pow(unsigned(fac.multiplicity));
  auto q = divide_exact(f, prod);
  if (!q || !q->is_constant()) throw poly_error("internal: square-free reassembly failed");
  fl.constant = q->constant_term();
  return fl;
}

}  // namespace conelab
