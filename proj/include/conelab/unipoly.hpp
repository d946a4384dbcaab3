#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

// Dense univariate polynomial over Q. c[i] is the coefficient of t^i.
struct UniPoly {
  std::vector<Rational> c;

  static UniPoly zero() { return {}; }
  static UniPoly constant(const Rational& a);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim();

  Rational eval(const Rational& t) const;
  double eval(double t) const;
  UniPoly derivative() const;

  UniPoly operator*(const UniPoly& g) const;
  UniPoly operator-(const UniPoly& g) const;
  UniPoly operator+(const UniPoly& g) const;
  UniPoly scaled(const Rational& a) const;
};

// Quotient/remainder over the fraction field.
std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& f, const UniPoly& g);
UniPoly uni_gcd(UniPoly f, UniPoly g);  // monic gcd
UniPoly uni_squarefree_part(const UniPoly& f);

// All rational roots with multiplicities, plus the (root-free) cofactor.
struct RationalRoots {
  std::vector<std::pair<Rational, int>> roots;
  UniPoly cofactor;
};
RationalRoots rational_roots(const UniPoly& f);

// Number of distinct real roots of squarefree f in (a, b], by Sturm chains.
int sturm_count(const UniPoly& f, const Rational& a, const Rational& b);
int count_real_roots(const UniPoly& f, const Rational& a, const Rational& b);

// Disjoint isolating intervals (a_i, b_i], one per distinct real root in
// (lo, hi]. f need not be squarefree.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UniPoly& f,
                                                              const Rational& lo,
                                                              const Rational& hi);

// Bisect an isolating interval down to double precision.
double refine_root(const UniPoly& f, Rational a, Rational b);

}  // namespace conelab
