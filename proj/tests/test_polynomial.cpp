#include <doctest.h>

#include "conelab/geometry.hpp"
#include "conelab/parser.hpp"

using namespace conelab;

TEST_SUITE_BEGIN("polynomial");

TEST_CASE("parse the sextic saddle") {
  Polynomial f = parse_polynomial("z^3 - x^5*y - x*y^5");
  CHECK(f.term_count() == 3);
  CHECK(f.degree() == 6);
  CHECK(f.nvars() == 3);
}

TEST_CASE("parse zero") {
  Polynomial f = parse_polynomial("0");
  CHECK(f.is_zero());
  CHECK(f.term_count() == 0);
}

TEST_CASE("parse expands products") {
  Polynomial f = parse_polynomial("x*(y^2 + x^4)");
  Polynomial g = parse_polynomial("x*y^2 + x^5");
  CHECK(f == g);
}

TEST_CASE("implicit multiplication rejected") {
  CHECK_THROWS_AS(parse_polynomial("2x"), parse_error);
}

TEST_CASE("double star is a syntax error with an offset") {
  try {
    parse_polynomial("x**2");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.offset() == 2);
  }
}

TEST_CASE("variable index cap") {
  CHECK_THROWS_AS(parse_polynomial("x9"), parse_error);
  Polynomial f = parse_polynomial("x8");
  CHECK(f.nvars() == 8);
}

TEST_CASE("non-integer exponent") {
  CHECK_THROWS_AS(parse_polynomial("x^1.5"), parse_error);
}

TEST_CASE("rational and decimal literals agree") {
  CHECK(parse_polynomial("1/2") == parse_polynomial("0.5"));
  CHECK(parse_polynomial("3/4*x") == parse_polynomial("0.75*x"));
}

TEST_CASE("print-parse round trip is the identity") {
  const char* exprs[] = {"z^3 - x^5*y - x*y^5", "x*y^2 + x^5",     "y^2 - x^3",
                         "x^2 - y^3*(1 - y)",   "2*z - x^2 - 1",   "1/2*x - 7/3",
                         "y*(1 - x^2) - 1",     "x^3 + y^3 - z^3", "0"};
  for (const char* s : exprs) {
    Polynomial f = parse_polynomial(s);
    CHECK(parse_polynomial(f.str()) == f);
  }
}

TEST_CASE("translate shifts the parabola") {
  Polynomial f = parse_polynomial("y - x^2");
  std::vector<Rational> p{Rational(1), Rational(1)};
  Polynomial g = f.translate(p);
  CHECK(g == parse_polynomial("y - x^2 - 2*x"));
  // g(0) = f(p)
  std::vector<Rational> origin{Rational(0), Rational(0)};
  CHECK(g.evaluate(std::span<const Rational>(origin)) ==
        f.evaluate(std::span<const Rational>(p)));
}

TEST_CASE("translate by the origin is the identity") {
  Polynomial f = parse_polynomial("x^3 + y^3 - z^3");
  std::vector<Rational> o{Rational(0), Rational(0), Rational(0)};
  CHECK(f.translate(o) == f);
}

TEST_CASE("translate round trip is exact") {
  Rng rng(7);
  Polynomial f = parse_polynomial("x^2*y - 3*y^2 + 7*x - 1/2");
  for (int k = 0; k < 8; ++k) {
    std::vector<Rational> p{Rational(long(rng.next_u64() % 19) - 9, 4),
                            Rational(long(rng.next_u64() % 19) - 9, 3)};
    for (auto& c : p) c.canonicalize();
    std::vector<Rational> mp{-p[0], -p[1]};
    CHECK(f.translate(p).translate(mp) == f);
  }
}

TEST_CASE("leading form of the sextic saddle is the cubic term") {
  Polynomial f = parse_polynomial("z^3 - x^5*y - x*y^5");
  HomogeneousForm h = leading_form(f);
  CHECK(h.base == parse_polynomial("z^3").extended(3));
  CHECK(h.degree == 3);
}

TEST_CASE("leading form of x y^2 + x^5") {
  HomogeneousForm h = leading_form(parse_polynomial("x*y^2 + x^5"));
  CHECK(h.base == parse_polynomial("x*y^2"));
  CHECK(h.degree == 3);
}

TEST_CASE("leading form of a linear form is itself") {
  Polynomial f = parse_polynomial("2*x - 3*y");
  HomogeneousForm h = leading_form(f);
  CHECK(h.base == f);
  CHECK(h.degree == 1);
}

TEST_CASE("leading form rejects nonzero constant terms") {
  CHECK_THROWS_AS(leading_form(parse_polynomial("y - x^2 + 1")), poly_error);
  CHECK_THROWS_AS(leading_form(parse_polynomial("0")), poly_error);
}

TEST_CASE("tail above the leading form degree") {
  Polynomial f = parse_polynomial("x*y^2 + x^5 - y^7");
  HomogeneousForm h = leading_form(f);
  Polynomial tail = f - h.base;
  CHECK(tail.min_degree() > h.degree);
}

TEST_CASE("homogeneity h(lambda x) = lambda^m h(x) exactly") {
  HomogeneousForm h = leading_form(parse_polynomial("x*y^2 + x^5"));
  std::vector<Rational> lambdas{Rational(2), Rational(3), Rational(1, 2)};
  std::vector<std::vector<Rational>> pts;
  Rng rng(11);
  for (int k = 0; k < 6; ++k)
    pts.push_back({Rational(long(rng.next_u64() % 13) - 6, 5),
                   Rational(long(rng.next_u64() % 13) - 6, 7)});
  for (auto& p : pts)
    for (auto& c : p) c.canonicalize();
  CHECK(homogeneity_check(h, lambdas, pts));
}

TEST_CASE("evaluate and gradient plumbing") {
  Polynomial f = parse_polynomial("x^2 + y^2 - 1");
  std::vector<Rational> p{Rational(3, 5), Rational(4, 5)};
  CHECK(sign(f.evaluate(std::span<const Rational>(p))) == 0);
  auto grad = f.gradient();
  CHECK(grad[0] == parse_polynomial("2*x"));
  CHECK(grad[1] == parse_polynomial("2*y").extended(2));
}

TEST_SUITE_END();
