#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

inline constexpr int kMaxVars = 8;

// Exponent vector. Unused variable slots stay zero.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};

  int total() const {
    int t = 0;
    for (auto v : e) t += v;
    return t;
  }
  bool operator==(const Monomial&) const = default;
};

// Graded lexicographic, highest term first. Map iteration order doubles as
// the canonical printing/hashing order.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int ta = a.total(), tb = b.total();
    if (ta != tb) return ta > tb;
    return a.e > b.e;
  }
};

class poly_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Invariants: no stored zero coefficients; exponents live in the first
// nvars() slots.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GradedLexGreater>;

  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(check_nvars(nvars)) {}

  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int var);  // var in [0, nvars)
  static Polynomial monomial(int nvars, const Monomial& m, const Rational& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  int degree() const;      // max total degree, -1 for the zero polynomial
  int min_degree() const;  // min total degree, -1 for the zero polynomial
  int degree_in(int var) const;

  Rational constant_term() const;
  const Rational* coeff(const Monomial& m) const;
  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& g);
  Polynomial& operator-=(const Polynomial& g);
  friend Polynomial operator+(Polynomial f, const Polynomial& g) { return f += g; }
  friend Polynomial operator-(Polynomial f, const Polynomial& g) { return f -= g; }
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  Polynomial& operator*=(const Polynomial& g) { return *this = *this * g; }
  Polynomial& operator*=(const Rational& c);
  Polynomial pow(unsigned k) const;
  bool operator==(const Polynomial&) const = default;

  Polynomial derivative(int var) const;
  std::vector<Polynomial> gradient() const;

  Rational evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;

  // g(x) = f(x + p), exact.
  Polynomial translate(std::span<const Rational> p) const;
  // Substitute variable `var` by g (g shares the variable space).
  Polynomial substitute(int var, const Polynomial& g) const;
  // f(lambda * x), exact.
  Polynomial scale_arg(const Rational& lambda) const;

  Polynomial homogeneous_part(int d) const;
  // Widen the variable space (new variables unused).
  Polynomial extended(int nvars) const;

  std::string str() const;  // canonical form, reparses to the same value

  static std::vector<std::string> var_names(int nvars);

 private:
  static int check_nvars(int n);
  int nvars_ = 0;
  TermMap terms_;
};

// Lowest-degree homogeneous part of f, paired with its degree m.  The tail
// f - base has every term of degree > m.
struct HomogeneousForm {
  Polynomial base;
  int degree = 0;
};

// Requires f nonzero with zero constant term (translate first otherwise).
HomogeneousForm leading_form(const Polynomial& f);

// Asserts h(lambda * x) == lambda^m h(x) exactly at the given sample points.
bool homogeneity_check(const HomogeneousForm& h,
                       std::span<const Rational> lambdas,
                       std::span<const std::vector<Rational>> points);

}  // namespace conelab
