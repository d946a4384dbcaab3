#include <doctest.h>

#include "conelab/factor.hpp"
#include "conelab/parser.hpp"
#include "conelab/unipoly.hpp"

using namespace conelab;

TEST_SUITE_BEGIN("factor");

namespace {
bool has_factor(const FactorList& fl, const char* expr, int mult) {
  Polynomial want = normalize_primitive(parse_polynomial(expr));
  for (const auto& f : fl.factors)
    if (poly_cmp(f.poly, want.extended(f.poly.nvars())) == 0 && f.multiplicity == mult)
      return true;
  return false;
}
}  // namespace

TEST_CASE("difference of squares splits into the two lines") {
  FactorList fl = square_free_factor(parse_polynomial("x^2 - y^2"));
  CHECK(fl.factors.size() == 2);
  CHECK(has_factor(fl, "x - y", 1));
  CHECK(has_factor(fl, "x + y", 1));
  CHECK(fl.reassemble(2) == parse_polynomial("x^2 - y^2"));
}

TEST_CASE("monomial x y^2") {
  FactorList fl = square_free_factor(parse_polynomial("x*y^2"));
  CHECK(has_factor(fl, "x", 1));
  CHECK(has_factor(fl, "y", 2));
  CHECK(fl.reassemble(2) == parse_polynomial("x*y^2"));
}

TEST_CASE("prime power z^3") {
  FactorList fl = square_free_factor(parse_polynomial("z^3"));
  CHECK(fl.factors.size() == 1);
  CHECK(has_factor(fl, "z", 3));
}

TEST_CASE("reassembly is exact across the corpus") {
  const char* exprs[] = {
      "y^2 - x^3",          "y^3 - x^4",          "y^5 - x^6",
      "x^2 - y^2*(1 - y)",  "x^2 - y^3*(1 - y)",  "z^3 - x^5*y - x*y^5",
      "x^3 + y^3 - z^3",    "2*z - x^2 - 1",      "y*(1 - x^2) - 1",
      "(y - x^2)^2*(x + y)", "4*x^2 - 12*x*y + 9*y^2"};
  for (const char* s : exprs) {
    Polynomial f = parse_polynomial(s);
    FactorList fl = square_free_factor(f);
    CHECK(fl.reassemble(f.nvars()) == f);
  }
}

TEST_CASE("perfect square recovered with multiplicity 2") {
  FactorList fl = square_free_factor(parse_polynomial("4*x^2 - 12*x*y + 9*y^2"));
  CHECK(fl.factors.size() == 1);
  CHECK(has_factor(fl, "2*x - 3*y", 2));
}

TEST_CASE("degree cap raises the timeout error") {
  Polynomial f = parse_polynomial("x + y").pow(25);
  CHECK_THROWS_AS(square_free_factor(f), factor_timeout);
}

TEST_CASE("gcd of tangent curves") {
  Polynomial a = parse_polynomial("(y - x^2)^2*(x + y)");
  Polynomial b = parse_polynomial("(y - x^2)*(x - y)");
  Polynomial g = poly_gcd(a, b);
  CHECK(poly_cmp(g, normalize_primitive(parse_polynomial("y - x^2"))) == 0);
}

TEST_CASE("gcd of coprime polynomials is 1") {
  Polynomial g = poly_gcd(parse_polynomial("y^2 - x^3"), parse_polynomial("y - x^2"));
  CHECK(g.is_constant());
}

TEST_CASE("exact division") {
  Polynomial f = parse_polynomial("(x^2 + y^2 + z^2)*(z - x)");
  auto q = divide_exact(f, parse_polynomial("z - x"));
  REQUIRE(q.has_value());
  CHECK(*q == parse_polynomial("x^2 + y^2 + z^2"));
  CHECK_FALSE(divide_exact(f, parse_polynomial("z - y")).has_value());
}

TEST_CASE("trivariate square-free decomposition") {
  Polynomial f = parse_polynomial("z^2*(x^2 + y^2)*(z - x)^3");
  FactorList fl = square_free_factor(f);
  CHECK(fl.reassemble(3) == f);
  CHECK(has_factor(fl, "z", 2));
  CHECK(has_factor(fl, "x^2 + y^2", 1));
  CHECK(has_factor(fl, "z - x", 3));
}

TEST_CASE("univariate rational roots with multiplicity") {
  // (t - 2)^2 (2t + 1) (t^2 + 1)
  UniPoly u;
  u.c = {Rational(4), Rational(-12), Rational(9), Rational(1), Rational(-7), Rational(2)};
  // Build instead from factors to avoid hand-expansion slips.
  UniPoly a;
  a.c = {Rational(-2), Rational(1)};
  UniPoly b;
  b.c = {Rational(1), Rational(2)};
  UniPoly q;
  q.c = {Rational(1), Rational(0), Rational(1)};
  UniPoly prod = a * a * b * q;
  auto rr = rational_roots(prod);
  bool found2 = false, foundhalf = false;
  for (const auto& [root, mult] : rr.roots) {
    if (root == Rational(2)) {
      CHECK(mult == 2);
      found2 = true;
    }
    if (root == Rational(-1, 2)) {
      CHECK(mult == 1);
      foundhalf = true;
    }
  }
  CHECK(found2);
  CHECK(foundhalf);
  CHECK(rr.cofactor.degree() == 2);
}

TEST_CASE("sturm isolation counts distinct real roots") {
  // t (t - 1) (t + 3)
  UniPoly u;
  u.c = {Rational(0), Rational(-3), Rational(2), Rational(1)};
  auto ivals = isolate_real_roots(u, Rational(-10), Rational(10));
  CHECK(ivals.size() == 3);
  CHECK(count_real_roots(u, Rational(0), Rational(10)) == 1);
}

TEST_SUITE_END();
