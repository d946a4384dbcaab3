#include "conelab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace conelab {

int Polynomial::check_nvars(int n) {
  if (n < 0 || n > kMaxVars) throw poly_error("variable count out of range");
  return n;
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial f(nvars);
  if (sign(c) != 0) f.terms_.emplace(Monomial{}, c);
  return f;
}

Polynomial Polynomial::variable(int nvars, int var) {
  if (var < 0 || var >= nvars) throw poly_error("variable index out of range");
  Monomial m;
  m.e[var] = 1;
  return monomial(nvars, m, Rational(1));
}

Polynomial Polynomial::monomial(int nvars, const Monomial& m, const Rational& c) {
  Polynomial f(nvars);
  if (sign(c) != 0) f.terms_.emplace(m, c);
  return f;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0);
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return terms_.begin()->first.total();  // graded order: first term is max
}

int Polynomial::min_degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.total();
}

int Polynomial::degree_in(int var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, int(m.e[var]));
  return d;
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

const Rational* Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? nullptr : &it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (sign(c) == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (sign(it->second) == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& g) {
  if (g.nvars_ > nvars_) nvars_ = g.nvars_;
  for (const auto& [m, c] : g.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& g) {
  if (g.nvars_ > nvars_) nvars_ = g.nvars_;
  for (const auto& [m, c] : g.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  Polynomial r(std::max(f.nvars_, g.nvars_));
  for (const auto& [mf, cf] : f.terms_) {
    for (const auto& [mg, cg] : g.terms_) {
      Monomial m = mf;
      for (int i = 0; i < kMaxVars; ++i) m.e[i] += mg.e[i];
      r.add_term(m, cf * cg);
    }
  }
  return r;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sign(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(nvars_, Rational(1));
  Polynomial base = *this;
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.e[var] == 0) continue;
    Monomial d = m;
    d.e[var] -= 1;
    r.add_term(d, c * Rational(m.e[var]));
  }
  return r;
}

std::vector<Polynomial> Polynomial::gradient() const {
  std::vector<Polynomial> g;
  g.reserve(nvars_);
  for (int i = 0; i < nvars_; ++i) g.push_back(derivative(i));
  return g;
}

Rational Polynomial::evaluate(std::span<const Rational> x) const {
  if (int(x.size()) < nvars_) throw poly_error("evaluate: dimension mismatch");
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i) {
      for (int k = 0; k < m.e[i]; ++k) t *= x[i];
    }
    acc += t;
  }
  return acc;
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (int(x.size()) < nvars_) throw poly_error("evaluate: dimension mismatch");
  double acc = 0;
  for (const auto& [m, c] : terms_) {
    double t = to_double(c);
    for (int i = 0; i < nvars_; ++i) {
      for (int k = 0; k < m.e[i]; ++k) t *= x[i];
    }
    acc += t;
  }
  return acc;
}

Polynomial Polynomial::translate(std::span<const Rational> p) const {
  if (int(p.size()) != nvars_) throw poly_error("translate: dimension mismatch");
  Polynomial r = *this;
  for (int i = 0; i < nvars_; ++i) {
    if (sign(p[i]) == 0) continue;
    // Expand (x_i + p_i)^e per term via binomials.
    Polynomial next(nvars_);
    int dmax = r.degree_in(i);
    // Pascal rows cached up to dmax.
    std::vector<std::vector<Rational>> binom(dmax + 1);
    for (int d = 0; d <= dmax; ++d) {
      binom[d].resize(d + 1);
      binom[d][0] = 1;
      for (int k = 1; k <= d; ++k)
        binom[d][k] = binom[d - 1][k - 1] + (k < d ? binom[d - 1][k] : Rational(0));
    }
    for (const auto& [m, c] : r.terms_) {
      int e = m.e[i];
      Rational pw(1);
      for (int k = e; k >= 0; --k) {
        // coefficient of x_i^k: C(e,k) p^(e-k)
        Monomial t = m;
        t.e[i] = std::uint16_t(k);
        next.add_term(t, c * binom[e][k] * pw);
        pw *= p[i];
      }
    }
    r = std::move(next);
  }
  return r;
}

Polynomial Polynomial::substitute(int var, const Polynomial& g) const {
  Polynomial r(std::max(nvars_, g.nvars()));
  // Group by exponent of `var`, apply Horner in g.
  int dmax = degree_in(var);
  std::vector<Polynomial> by_exp(dmax + 1, Polynomial(nvars_));
  for (const auto& [m, c] : terms_) {
    Monomial t = m;
    int e = t.e[var];
    t.e[var] = 0;
    by_exp[e].add_term(t, c);
  }
  for (int e = dmax; e >= 0; --e) {
    r = r * g;
    r += by_exp[e];
  }
  return r;
}

Polynomial Polynomial::scale_arg(const Rational& lambda) const {
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < m.e[i]; ++k) t *= lambda;
    r.add_term(m, t);
  }
  return r;
}

Polynomial Polynomial::homogeneous_part(int d) const {
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_)
    if (m.total() == d) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::extended(int nvars) const {
  check_nvars(nvars);
  for (const auto& [m, c] : terms_)
    for (int i = nvars; i < kMaxVars; ++i)
      if (m.e[i] != 0) throw poly_error("extended: variable in use beyond requested space");
  Polynomial r = *this;
  r.nvars_ = nvars;
  return r;
}

std::vector<std::string> Polynomial::var_names(int nvars) {
  std::vector<std::string> names;
  if (nvars <= 3) {
    const char* xyz[] = {"x", "y", "z"};
    for (int i = 0; i < nvars; ++i) names.push_back(xyz[i]);
  } else {
    for (int i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));
  }
  return names;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  auto names = var_names(nvars_);
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (sign(a) < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (sign(a) < 0 ? " - " : " + ");
      if (sign(a) < 0) a = -a;
    }
    first = false;
    bool printed_coeff = false;
    if (a != 1 || m.total() == 0) {
      out << a.get_str();
      printed_coeff = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      if (m.e[i] == 0) continue;
      if (printed_coeff) out << "*";
      out << names[i];
      if (m.e[i] > 1) out << "^" << m.e[i];
      printed_coeff = true;
    }
  }
  return out.str();
}

HomogeneousForm leading_form(const Polynomial& f) {
  if (f.is_zero()) throw poly_error("leading form of the zero polynomial");
  if (sign(f.constant_term()) != 0)
    throw poly_error("leading form requires a zero constant term (point not on the variety)");
  int m = f.min_degree();
  return HomogeneousForm{f.homogeneous_part(m), m};
}

bool homogeneity_check(const HomogeneousForm& h,
                       std::span<const Rational> lambdas,
                       std::span<const std::vector<Rational>> points) {
  for (const auto& lambda : lambdas) {
    Rational lm(1);
    for (int k = 0; k < h.degree; ++k) lm *= lambda;
    for (const auto& pt : points) {
      std::vector<Rational> scaled(pt.size());
      for (std::size_t i = 0; i < pt.size(); ++i) scaled[i] = pt[i] * lambda;
      if (h.base.evaluate(std::span<const Rational>(scaled)) !=
          lm * h.base.evaluate(std::span<const Rational>(pt)))
        return false;
    }
  }
  return true;
}

}  // namespace conelab
