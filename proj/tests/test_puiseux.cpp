#include <doctest.h>

#include "conelab/parser.hpp"
#include "conelab/puiseux.hpp"

using namespace conelab;

TEST_SUITE_BEGIN("puiseux");

TEST_CASE("newton polygon of the cusp") {
  NewtonPolygon np = newton_polygon(parse_polynomial("y^2 - x^3"));
  REQUIRE(np.lower_edges.size() == 1);
  CHECK(np.lower_edges[0].slope == Rational(3, 2));
  CHECK(np.lower_edges[0].face == parse_polynomial("y^2 - x^3"));
}

TEST_CASE("newton polygon of y^3 - x^4") {
  NewtonPolygon np = newton_polygon(parse_polynomial("y^3 - x^4"));
  REQUIRE(np.lower_edges.size() == 1);
  CHECK(np.lower_edges[0].slope == Rational(4, 3));
}

TEST_CASE("newton polygon of a smooth graph") {
  NewtonPolygon np = newton_polygon(parse_polynomial("y - x^2"));
  REQUIRE(np.lower_edges.size() == 1);
  CHECK(np.lower_edges[0].slope == Rational(2));
}

TEST_CASE("newton polygon splits monomial factors") {
  NewtonPolygon np = newton_polygon(parse_polynomial("x*y^2 + x^5"));
  CHECK(np.axis_x_mult == 1);
  CHECK(np.axis_y_mult == 0);
}

TEST_CASE("cusp expands to a single two-sheeted branch") {
  auto branches = puiseux_expand(parse_polynomial("y^2 - x^3"));
  REQUIRE(branches.size() == 1);
  const auto& b = branches[0];
  CHECK(b.ramification == 2);
  CHECK(b.real);
  CHECK(b.solved_var == 1);
  REQUIRE(!b.terms.empty());
  CHECK(b.terms[0].exponent == Rational(3, 2));
  CHECK(b.terms[0].coeff == Rational(1));
}

TEST_CASE("y^3 = x^4 expands with ramification 3") {
  auto branches = puiseux_expand(parse_polynomial("y^3 - x^4"));
  REQUIRE(branches.size() == 1);
  CHECK(branches[0].ramification == 3);
  CHECK(branches[0].terms[0].exponent == Rational(4, 3));
}

TEST_CASE("piriform solves x as a series in y") {
  auto branches = puiseux_expand(parse_polynomial("x^2 - y^3*(1 - y)"));
  REQUIRE(branches.size() == 1);
  const auto& b = branches[0];
  CHECK(b.solved_var == 0);
  CHECK(b.ramification == 2);
  CHECK(b.terms[0].exponent == Rational(3, 2));
  // x = y^(3/2) (1 - y)^(1/2) = y^(3/2) - (1/2) y^(5/2) - ...
  REQUIRE(b.terms.size() >= 2);
  CHECK(b.terms[1].exponent == Rational(5, 2));
  CHECK(b.terms[1].coeff == Rational(-1, 2));
}

TEST_CASE("node splits into two transverse branches") {
  auto branches = puiseux_expand(parse_polynomial("x^2 - y^2*(1 - y)"));
  REQUIRE(branches.size() == 2);
  for (const auto& b : branches) {
    CHECK(b.ramification == 1);
    CHECK(b.real);
  }
}

TEST_CASE("pure imaginary germ is flagged non-real") {
  auto branches = puiseux_expand(parse_polynomial("y^2 + x^2"));
  REQUIRE(branches.size() == 2);
  for (const auto& b : branches) CHECK_FALSE(b.real);
}

TEST_CASE("axis factor becomes a line branch") {
  auto branches = puiseux_expand(parse_polynomial("x*y^2 + x^5"));
  bool axis_found = false;
  int nonreal = 0;
  for (const auto& b : branches) {
    if (b.axis) axis_found = true;
    if (!b.real) ++nonreal;
  }
  CHECK(axis_found);
  CHECK(nonreal == 2);  // y^2 + x^4 has no real sheets
}

TEST_CASE("ramification bookkeeping sums to the y-order") {
  struct Case {
    const char* expr;
    int expected;  // ord of f(0, y) after the solve-variable choice
  } cases[] = {{"y^2 - x^3", 2}, {"y^3 - x^4", 3}, {"x^2 - y^3*(1 - y)", 2},
               {"x^2 - y^2*(1 - y)", 2}, {"y^2 + x^2", 2}};
  for (const auto& c : cases) {
    auto branches = puiseux_expand(parse_polynomial(c.expr));
    int total = 0;
    for (const auto& b : branches)
      if (!b.axis) total += b.ramification;
    CHECK_MESSAGE(total == c.expected, c.expr);
  }
}

TEST_CASE("residual valuation exceeds the truncation order") {
  const char* exprs[] = {"y^2 - x^3", "y^3 - x^4", "x^2 - y^3*(1 - y)",
                         "x^2 - y^2*(1 - y)", "(1 - y)*y^3 - x^4"};
  for (const char* s : exprs) {
    Polynomial f = parse_polynomial(s);
    for (const auto& b : puiseux_expand(f)) {
      if (!b.real || b.axis || b.numeric) continue;
      Rational val = residual_valuation(f, b);
      CHECK_MESSAGE(val > b.truncation_order, s);
    }
  }
}

TEST_CASE("half branches of the cusp share one ray") {
  auto branches = puiseux_expand(parse_polynomial("y^2 - x^3"));
  auto hbs = half_branches(branches);
  REQUIRE(hbs.size() == 2);
  CHECK(angular_distance(hbs[0].tangent_ray, Vec3{1, 0, 0}, 2) < 1e-12);
  CHECK(angular_distance(hbs[1].tangent_ray, Vec3{1, 0, 0}, 2) < 1e-12);
}

TEST_CASE("half branches of y^3 = x^4 oppose") {
  auto hbs = half_branches(puiseux_expand(parse_polynomial("y^3 - x^4")));
  REQUIRE(hbs.size() == 2);
  Vec3 sum = add(hbs[0].tangent_ray, hbs[1].tangent_ray);
  CHECK(norm(sum, 2) < 1e-12);
}

TEST_CASE("half branches of the smooth parabola oppose") {
  auto hbs = half_branches(puiseux_expand(parse_polynomial("y - x^2")));
  REQUIRE(hbs.size() == 2);
  CHECK(angular_distance(hbs[0].tangent_ray, mul(hbs[1].tangent_ray, -1.0), 2) < 1e-12);
}

TEST_CASE("the ray dichotomy is exact per branch") {
  const char* exprs[] = {"y^2 - x^3",         "y^3 - x^4",         "y^5 - x^6",
                         "x^2 - y^3*(1 - y)", "x^2 - y^2*(1 - y)", "(1 - y)*y^3 - x^4"};
  for (const char* s : exprs) {
    auto branches = puiseux_expand(parse_polynomial(s));
    auto hbs = half_branches(branches);
    for (std::size_t i = 0; i < hbs.size(); ++i)
      for (std::size_t j = i + 1; j < hbs.size(); ++j) {
        if (hbs[i].branch_index != hbs[j].branch_index) continue;
        double ang = angular_distance(hbs[i].tangent_ray, hbs[j].tangent_ray, 2);
        CHECK_MESSAGE((ang < 1e-9 || ang > M_PI - 1e-9), s);
      }
  }
}

TEST_CASE("germ classification matches the dichotomy") {
  CHECK(classify_germ(parse_polynomial("y^2 - x^3")).cls == GermClass::Cusp);
  CHECK(classify_germ(parse_polynomial("y^3 - x^4")).cls == GermClass::C1);
  CHECK(classify_germ(parse_polynomial("y^5 - x^6")).cls == GermClass::C1);
  CHECK(classify_germ(parse_polynomial("x^2 - y^3*(1 - y)")).cls == GermClass::Cusp);
  CHECK(classify_germ(parse_polynomial("x^2 - y^2*(1 - y)")).cls == GermClass::MultiBranch);
  CHECK(classify_germ(parse_polynomial("y - x^2")).cls == GermClass::C1);
  CHECK(classify_germ(parse_polynomial("y^2 + x^2")).cls == GermClass::IsolatedPoint);
}

TEST_CASE("closed deltoids classify like their open models") {
  CHECK(classify_germ(parse_polynomial("(1 - y)*y^3 - x^4")).cls == GermClass::C1);
  CHECK(classify_germ(parse_polynomial("(1 - y)*y^5 - x^6")).cls == GermClass::C1);
}

TEST_CASE("multiplicity structure is flattened before expansion") {
  // (y - x^2)^2 has the same point set as the parabola.
  CHECK(classify_germ(parse_polynomial("(y - x^2)^2")).cls == GermClass::C1);
}

TEST_SUITE_END();
