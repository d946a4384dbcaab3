#include "conelab/unipoly.hpp"

#include <algorithm>
#include <cmath>

namespace conelab {

UniPoly UniPoly::constant(const Rational& a) {
  UniPoly f;
  if (sign(a) != 0) f.c.push_back(a);
  return f;
}

void UniPoly::trim() {
  while (!c.empty() && sign(c.back()) == 0) c.pop_back();
}

Rational UniPoly::eval(const Rational& t) const {
  Rational acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double UniPoly::eval(double t) const {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + to_double(*it);
  return acc;
}

UniPoly UniPoly::derivative() const {
  UniPoly d;
  for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * Rational(long(i)));
  d.trim();
  return d;
}

UniPoly UniPoly::operator*(const UniPoly& g) const {
  if (is_zero() || g.is_zero()) return {};
  UniPoly r;
  r.c.assign(c.size() + g.c.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < g.c.size(); ++j) r.c[i + j] += c[i] * g.c[j];
  r.trim();
  return r;
}

UniPoly UniPoly::operator+(const UniPoly& g) const {
  UniPoly r = *this;
  if (g.c.size() > r.c.size()) r.c.resize(g.c.size(), Rational(0));
  for (std::size_t i = 0; i < g.c.size(); ++i) r.c[i] += g.c[i];
  r.trim();
  return r;
}

UniPoly UniPoly::operator-(const UniPoly& g) const {
  UniPoly r = *this;
  if (g.c.size() > r.c.size()) r.c.resize(g.c.size(), Rational(0));
  for (std::size_t i = 0; i < g.c.size(); ++i) r.c[i] -= g.c[i];
  r.trim();
  return r;
}

UniPoly UniPoly::scaled(const Rational& a) const {
  UniPoly r = *this;
  if (sign(a) == 0) return {};
  for (auto& v : r.c) v *= a;
  return r;
}

std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& f, const UniPoly& g) {
  if (g.is_zero()) throw std::runtime_error("uni_divmod: division by zero");
  UniPoly r = f, q;
  int dg = g.degree();
  if (f.degree() >= dg) q.c.assign(f.degree() - dg + 1, Rational(0));
  const Rational& lg = g.c.back();
  while (!r.is_zero() && r.degree() >= dg) {
    int k = r.degree() - dg;
    Rational t = r.c.back() / lg;
    q.c[k] = t;
    for (int i = 0; i <= dg; ++i) r.c[k + i] -= t * g.c[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

UniPoly uni_gcd(UniPoly f, UniPoly g) {
  f.trim();
  g.trim();
  while (!g.is_zero()) {
    UniPoly r = uni_divmod(f, g).second;
    f = std::move(g);
    g = std::move(r);
  }
  if (!f.is_zero()) {
    Rational inv = 1 / f.c.back();
    f = f.scaled(inv);
  }
  return f;
}

UniPoly uni_squarefree_part(const UniPoly& f) {
  if (f.degree() <= 0) return f;
  UniPoly g = uni_gcd(f, f.derivative());
  if (g.degree() <= 0) return f;
  return uni_divmod(f, g).first;
}

namespace {

// Divisors of |n|, by trial division. Empty when n is too composite-hard.
std::vector<mpz_class> small_divisors(const mpz_class& n, std::size_t cap = 4096) {
  std::vector<mpz_class> divs;
  mpz_class a = abs(n);
  if (a == 0) return divs;
  std::vector<std::pair<mpz_class, int>> fac;
  mpz_class d = 2;
  while (d * d <= a) {
    if (a % d == 0) {
      int e = 0;
      while (a % d == 0) {
        a /= d;
        ++e;
      }
      fac.emplace_back(d, e);
    }
    // Bail out on huge prime factors; rational-root candidates are then
    // incomplete which only demotes a branch to the numeric path.
    if (d > 1000000) break;
    d += (d == 2) ? 1 : 2;
  }
  if (a > 1) fac.emplace_back(a, 1);
  divs.push_back(1);
  for (const auto& [p, e] : fac) {
    std::size_t base = divs.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) {
        divs.push_back(divs[i] * pk);
        if (divs.size() > cap) return {};
      }
    }
  }
  return divs;
}

}  // namespace

RationalRoots rational_roots(const UniPoly& f) {
  RationalRoots out;
  out.cofactor = f;
  out.cofactor.trim();
  if (out.cofactor.degree() <= 0) return out;

  // Split off t^k.
  int k = 0;
  while (k <= out.cofactor.degree() && sign(out.cofactor.c[k]) == 0) ++k;
  if (k > 0) {
    out.roots.emplace_back(Rational(0), k);
    out.cofactor.c.erase(out.cofactor.c.begin(), out.cofactor.c.begin() + k);
  }

  // Clear denominators to an integer polynomial.
  mpz_class den_lcm = 1;
  for (const auto& a : out.cofactor.c) den_lcm = lcm(den_lcm, a.get_den());
  std::vector<mpz_class> ic;
  for (const auto& a : out.cofactor.c) {
    Rational v = a * Rational(den_lcm);
    ic.push_back(v.get_num());
  }

  auto ps = small_divisors(ic.front());
  auto qs = small_divisors(ic.back());
  if (ps.empty() || qs.empty()) return out;  // incomplete candidate set

  std::vector<Rational> candidates;
  for (const auto& p : ps)
    for (const auto& q : qs) {
      Rational r(p, q);
      r.canonicalize();
      candidates.push_back(r);
      candidates.push_back(-r);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const auto& r : candidates) {
    int mult = 0;
    while (out.cofactor.degree() >= 1 && sign(out.cofactor.eval(r)) == 0) {
      UniPoly lin;
      lin.c = {-r, Rational(1)};
      out.cofactor = uni_divmod(out.cofactor, lin).first;
      ++mult;
    }
    if (mult > 0) out.roots.emplace_back(r, mult);
  }
  return out;
}

namespace {

std::vector<UniPoly> sturm_chain(const UniPoly& f) {
  std::vector<UniPoly> chain;
  chain.push_back(f);
  chain.push_back(f.derivative());
  while (!chain.back().is_zero() && chain.back().degree() >= 0) {
    const UniPoly& a = chain[chain.size() - 2];
    const UniPoly& b = chain.back();
    if (b.is_zero()) break;
    UniPoly r = uni_divmod(a, b).second;
    if (r.is_zero()) break;
    for (auto& v : r.c) v = -v;
    chain.push_back(std::move(r));
    if (chain.back().degree() == 0) break;
  }
  return chain;
}

int sign_variations(const std::vector<UniPoly>& chain, const Rational& t) {
  int var = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sign(p.eval(t));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

}  // namespace

int sturm_count(const UniPoly& f, const Rational& a, const Rational& b) {
  auto chain = sturm_chain(f);
  return sign_variations(chain, a) - sign_variations(chain, b);
}

int count_real_roots(const UniPoly& f, const Rational& a, const Rational& b) {
  UniPoly sf = uni_squarefree_part(f);
  if (sf.degree() <= 0) return 0;
  return sturm_count(sf, a, b);
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UniPoly& f,
                                                              const Rational& lo,
                                                              const Rational& hi) {
  std::vector<std::pair<Rational, Rational>> out;
  UniPoly sf = uni_squarefree_part(f);
  if (sf.degree() <= 0) return out;
  auto chain = sturm_chain(sf);
  struct Seg {
    Rational a, b;
    int count;
  };
  std::vector<Seg> stack;
  int total = sign_variations(chain, lo) - sign_variations(chain, hi);
  if (total <= 0) return out;
  stack.push_back({lo, hi, total});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.count == 1) {
      out.emplace_back(s.a, s.b);
      continue;
    }
    Rational mid = (s.a + s.b) / 2;
    // Nudge off a root so that interval ends stay regular.
    while (sign(sf.eval(mid)) == 0) mid = (s.a + mid) / 2;
    int left = sign_variations(chain, s.a) - sign_variations(chain, mid);
    if (left > 0) stack.push_back({s.a, mid, left});
    if (s.count - left > 0) stack.push_back({mid, s.b, s.count - left});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& u, const auto& v) { return u.first < v.first; });
  return out;
}

double refine_root(const UniPoly& f, Rational a, Rational b) {
  UniPoly sf = uni_squarefree_part(f);
  if (sign(sf.eval(b)) == 0) return to_double(b);
  int sa = sign(sf.eval(a));
  if (sa == 0) {
    // Left end of a half-open isolating interval: step inward.
    Rational step = (b - a) / 1024;
    a += step;
    sa = sign(sf.eval(a));
    if (sa == 0) return to_double(a);
  }
  for (int i = 0; i < 200 && to_double(b - a) > 1e-16 * (1 + std::fabs(to_double(a))); ++i) {
    Rational mid = (a + b) / 2;
    int sm = sign(sf.eval(mid));
    if (sm == 0) return to_double(mid);
    if (sm == sa)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (to_double(a) + to_double(b));
}

}  // namespace conelab
