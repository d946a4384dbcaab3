#include <doctest.h>

#include "conelab/classify.hpp"
#include "conelab/parser.hpp"

using namespace conelab;

TEST_SUITE_BEGIN("classify");

namespace {
std::vector<Rational> origin(int n) { return std::vector<Rational>(std::size_t(n), Rational(0)); }

Verdict classify_expr(const char* expr, std::vector<Rational> p = {}) {
  Polynomial f = parse_polynomial(expr);
  if (p.empty()) p = origin(f.nvars());
  Variety V = Variety::hypersurface(f);
  return classify_point(V, p);
}
}  // namespace

TEST_CASE("smooth points are regular") {
  Verdict v = classify_expr("y - x^2");
  CHECK(v.cls == VerdictClass::RegularPoint);
}

TEST_CASE("the cusp curve gets the cusp verdict") {
  Verdict v = classify_expr("y^2 - x^3");
  CHECK(v.cls == VerdictClass::Cusp);
  CHECK(v.rule == "Cor 5.5");
}

TEST_CASE("y^3 = x^4 is C1 with a Hoelder caveat") {
  Verdict v = classify_expr("y^3 - x^4");
  CHECK(v.cls == VerdictClass::C1_Hypersurface);
  CHECK(v.rule == "Cor 5.5");
  REQUIRE(v.evidence.hoelder_exponent.has_value());
  CHECK(*v.evidence.hoelder_exponent == doctest::Approx(1.0 / 3).epsilon(0.10));
  bool caveat_found = false;
  for (const auto& c : v.caveats)
    if (c.find("alpha") != std::string::npos) caveat_found = true;
  CHECK(caveat_found);
}

TEST_CASE("the node is a multi-branch point") {
  Verdict v = classify_expr("x^2 - y^2*(1 - y)");
  CHECK(v.cls == VerdictClass::MultiBranch);
}

TEST_CASE("the piriform has a cusp at the origin") {
  Verdict v = classify_expr("x^2 - y^3*(1 - y)");
  CHECK(v.cls == VerdictClass::Cusp);
}

TEST_CASE("the sextic saddle is not C1 despite its flat cone") {
  Verdict v = classify_expr("z^3 - x^5*y - x*y^5");
  CHECK(v.cls == VerdictClass::NotC1);
  REQUIRE(v.evidence.flat_normal.has_value());
  CHECK((*v.evidence.flat_normal)[2] == doctest::Approx(1.0));
  CHECK(v.evidence.normal_jump_witness.has_value());
}

TEST_CASE("the Fermat cubic is not C1: nonflat cone witness") {
  Verdict v = classify_expr("x^3 + y^3 - z^3");
  CHECK(v.cls == VerdictClass::NotC1);
  CHECK_FALSE(v.evidence.flat_normal.has_value());
  CHECK(!v.evidence.nonflat_witness.empty());
  if (v.evidence.symmetry.has_value()) CHECK(*v.evidence.symmetry);
}

TEST_CASE("hoelder probe hits the family exponents") {
  Vec3 up{0, 1, 0};
  double e2 = hoelder_probe(parse_polynomial("y^3 - x^4"), origin(2), up);
  CHECK(e2 == doctest::Approx(1.0 / 3).epsilon(0.10));
  double e3 = hoelder_probe(parse_polynomial("y^5 - x^6"), origin(2), up);
  CHECK(e3 == doctest::Approx(1.0 / 5).epsilon(0.10));
  std::vector<Rational> p{Rational(1), Rational(0)};
  double ec = hoelder_probe(parse_polynomial("x^2 + y^2 - 1"), p, Vec3{1, 0, 0});
  CHECK(ec == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("classify_curve finds the piriform cusp") {
  auto results = classify_curve(parse_polynomial("x^2 - y^3*(1 - y)"), Box::square(2, 2));
  REQUIRE(results.size() == 1);
  CHECK(sign(results[0].first[0]) == 0);
  CHECK(sign(results[0].first[1]) == 0);
  CHECK(results[0].second.cls == VerdictClass::Cusp);
}

TEST_CASE("classify_curve finds the node") {
  auto results = classify_curve(parse_polynomial("x^2 - y^2*(1 - y)"), Box::square(2, 2));
  REQUIRE(results.size() == 1);
  CHECK(results[0].second.cls == VerdictClass::MultiBranch);
}

TEST_CASE("classify_curve of a smooth curve is empty") {
  auto results = classify_curve(parse_polynomial("y - x^2"), Box::square(2, 2));
  CHECK(results.empty());
}

TEST_CASE("verdicts survive a rational rigid motion") {
  // Rotate by (cos, sin) = (3/5, 4/5): exact rational rotation.
  // f(x, y) -> f((3x + 4y)/5, (-4x + 3y)/5).
  auto rotate = [](const char* expr) {
    Polynomial f = parse_polynomial(expr);
    Polynomial x_new = parse_polynomial("3/5*x + 4/5*y");
    Polynomial y_new = parse_polynomial("-4/5*x + 3/5*y");
    // Substitute via the 2-variable composition.
    Polynomial out(2);
    for (const auto& [m, c] : f.terms()) {
      Polynomial term = Polynomial::constant(2, c);
      for (int k = 0; k < m.e[0]; ++k) term = term * x_new;
      for (int k = 0; k < m.e[1]; ++k) term = term * y_new;
      out += term;
    }
    return out;
  };
  struct Case {
    const char* expr;
    VerdictClass cls;
  } cases[] = {{"y^2 - x^3", VerdictClass::Cusp},
               {"y^3 - x^4", VerdictClass::C1_Hypersurface},
               {"x^2 - y^2*(1 - y)", VerdictClass::MultiBranch}};
  for (const auto& c : cases) {
    Polynomial rf = rotate(c.expr);
    Variety V = Variety::hypersurface(rf);
    Verdict v = classify_point(V, origin(2));
    CHECK_MESSAGE(v.cls == c.cls, c.expr);
  }
}

TEST_CASE("verdict monotonicity under stricter thresholds") {
  // A stricter support threshold can only move verdicts toward
  // Inconclusive/NotC1, never flip the saddle to C1.
  Polynomial f = parse_polynomial("z^3 - x^5*y - x*y^5");
  Variety V = Variety::hypersurface(f);
  ClassifyOptions strict;
  strict.support_threshold_factor = 1e-2;
  Verdict v = classify_point(V, origin(3), strict);
  CHECK(v.cls != VerdictClass::C1_Hypersurface);
  CHECK(v.cls != VerdictClass::C11_Hypersurface);
}

TEST_CASE("isolated points are reported as errors") {
  Polynomial f = parse_polynomial("x^2 + y^2");
  Variety V = Variety::hypersurface(f);
  CHECK_THROWS_AS(classify_point(V, origin(2)), analysis_error);
}

TEST_CASE("points off the variety are rejected") {
  Polynomial f = parse_polynomial("y^2 - x^3");
  Variety V = Variety::hypersurface(f);
  std::vector<Rational> p{Rational(2), Rational(2)};
  CHECK_THROWS_AS(classify_point(V, p), analysis_error);
}

TEST_SUITE_END();
