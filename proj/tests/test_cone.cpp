#include <doctest.h>

#include <cmath>

#include "conelab/cone.hpp"
#include "conelab/parser.hpp"

using namespace conelab;

TEST_SUITE_BEGIN("cone");

namespace {
std::vector<Rational> origin(int n) { return std::vector<Rational>(std::size_t(n), Rational(0)); }

bool has_direction(const ConeDescriptor& c, Vec3 want, double tol) {
  for (const auto& d : c.directions)
    if (angular_distance(d, want, c.n) <= tol) return true;
  return false;
}
}  // namespace

TEST_CASE("algebraic cone of the Fermat cubic is the cubic itself") {
  Polynomial f = parse_polynomial("x^3 + y^3 - z^3");
  HomogeneousForm h = algebraic_cone(f, origin(3));
  CHECK(h.base == f);
  CHECK(h.degree == 3);
}

TEST_CASE("algebraic cone of the cusp is y^2") {
  HomogeneousForm h = algebraic_cone(parse_polynomial("y^2 - x^3"), origin(2));
  CHECK(h.base == parse_polynomial("y^2").extended(2));
  CHECK(h.degree == 2);
}

TEST_CASE("algebraic cone at a smooth point is the tangent line") {
  HomogeneousForm h = algebraic_cone(parse_polynomial("y - x^2"), origin(2));
  CHECK(h.base == parse_polynomial("y").extended(2));
  CHECK(h.degree == 1);
}

TEST_CASE("algebraic cone rejects points off the variety") {
  std::vector<Rational> p{Rational(1), Rational(1)};
  CHECK_THROWS_AS(algebraic_cone(parse_polynomial("y^2 - x^3"), p), analysis_error);
}

TEST_CASE("sign locus of x y^2: only the y-axis carries a sign change") {
  HomogeneousForm h{parse_polynomial("x*y^2"), 3};
  SignLocus locus = sign_change_locus(h, 256, 42);
  CHECK(locus.odd_part == parse_polynomial("x").extended(2));
  CHECK(locus.even_part == parse_polynomial("y").extended(2));
  int realizable = 0;
  for (const auto& rf : locus.factors)
    if (rf.realizable) ++realizable;
  CHECK(realizable == 1);
}

TEST_CASE("sign locus of x^2 - y^2: both lines realizable") {
  HomogeneousForm h{parse_polynomial("x^2 - y^2"), 2};
  SignLocus locus = sign_change_locus(h, 256, 42);
  CHECK(locus.factors.size() == 2);
  for (const auto& rf : locus.factors) CHECK(rf.realizable);
}

TEST_CASE("a square never changes sign") {
  HomogeneousForm h{parse_polynomial("x^2").extended(2), 2};
  SignLocus locus = sign_change_locus(h, 256, 42);
  CHECK(locus.factors.empty());
  CHECK(locus.odd_part.is_constant());
}

TEST_CASE("flat normal of z^3") {
  HomogeneousForm h{parse_polynomial("z^3"), 3};
  SignLocus locus = sign_change_locus(h, 256, 42);
  auto nrm = flat_normal(h, locus);
  REQUIRE(nrm.has_value());
  CHECK((*nrm)[2] == doctest::Approx(1.0));
}

TEST_CASE("two crossing lines are not flat") {
  HomogeneousForm h{parse_polynomial("x^2 - y^2"), 2};
  CHECK_FALSE(flat_normal(h, sign_change_locus(h, 256, 42)).has_value());
}

TEST_CASE("positive-definite cofactor does not spoil flatness") {
  HomogeneousForm h{parse_polynomial("y*(x^2 + y^2 + z^2)"), 3};
  auto nrm = flat_normal(h, sign_change_locus(h, 512, 42));
  REQUIRE(nrm.has_value());
  CHECK((*nrm)[1] == doctest::Approx(1.0));
}

TEST_CASE("fermat cubic cone is realizable but not flat") {
  HomogeneousForm h{parse_polynomial("x^3 + y^3 - z^3"), 3};
  SignLocus locus = sign_change_locus(h, 512, 42);
  REQUIRE(locus.factors.size() == 1);
  CHECK(locus.factors[0].realizable);
  CHECK_FALSE(flat_normal(h, locus).has_value());
}

TEST_CASE("sampled cone of the cusp is a single ray") {
  Variety V = Variety::hypersurface(parse_polynomial("y^2 - x^3"));
  SampledConeOptions opt;
  ConeDescriptor cone = sampled_cone(V, origin(2), opt);
  CHECK(cone.directions.size() == 1);
  CHECK(has_direction(cone, Vec3{1, 0, 0}, 2e-2));
}

TEST_CASE("sampled cone of y^3 = x^4 has both horizontal rays") {
  Variety V = Variety::hypersurface(parse_polynomial("y^3 - x^4"));
  SampledConeOptions opt;
  ConeDescriptor cone = sampled_cone(V, origin(2), opt);
  CHECK(cone.directions.size() == 2);
  CHECK(has_direction(cone, Vec3{1, 0, 0}, 5e-2));
  CHECK(has_direction(cone, Vec3{-1, 0, 0}, 5e-2));
}

TEST_CASE("sampled cone at a smooth circle point is the tangent line") {
  Variety V = Variety::hypersurface(parse_polynomial("x^2 + y^2 - 1"));
  std::vector<Rational> p{Rational(1), Rational(0)};
  SampledConeOptions opt;
  ConeDescriptor cone = sampled_cone(V, p, opt);
  CHECK(cone.directions.size() == 2);
  CHECK(has_direction(cone, Vec3{0, 1, 0}, 2e-2));
  CHECK(has_direction(cone, Vec3{0, -1, 0}, 2e-2));
}

TEST_CASE("symmetry of direction sets") {
  ConeDescriptor c = ConeDescriptor::ray_fan({Vec3{1, 0, 0}, Vec3{-1, 0, 0}}, 2);
  CHECK(is_symmetric(c, 1e-2));
  ConeDescriptor single = ConeDescriptor::ray_fan({Vec3{1, 0, 0}}, 2);
  CHECK_FALSE(is_symmetric(single, 1e-2));
  CHECK(is_symmetric(symmetrize(single), 1e-9));
}

TEST_CASE("fermat cubic sampled cone is symmetric") {
  Variety V = Variety::hypersurface(parse_polynomial("x^3 + y^3 - z^3"));
  SampledConeOptions opt;
  opt.seeds_per_scale = 1024;
  ConeDescriptor cone = sampled_cone(V, origin(3), opt);
  CHECK(cone.directions.size() >= 8);
  CHECK(is_symmetric(symmetrize(cone), 2e-2));
}

TEST_CASE("hypersurface candidate screen") {
  CHECK_FALSE(hypersurface_candidate(ConeDescriptor::ray_fan({Vec3{1, 0, 0}}, 2)));
  CHECK(hypersurface_candidate(
      ConeDescriptor::ray_fan({Vec3{1, 0, 0}, Vec3{-1, 0, 0}}, 2)));
}

TEST_CASE("Lemma 5.2 containment: sampled directions vanish on h") {
  // Deep ladder so the secant drift is inside the containment tolerance.
  const char* exprs[] = {"y^2 - x^3", "y^3 - x^4", "x^2 - y^2*(1 - y)"};
  for (const char* s : exprs) {
    Polynomial f = parse_polynomial(s);
    HomogeneousForm h = algebraic_cone(f, origin(2));
    double hmax = 0;
    CompiledPoly cp = CompiledPoly::from(h.base.extended(2));
    for (const auto& u : sphere_grid(2, 256)) hmax = std::max(hmax, std::fabs(cp.eval(u.data())));
    Variety V = Variety::hypersurface(f);
    SampledConeOptions opt;
    opt.scale_ladder = {1e4, 1e6, 1e8};
    ConeDescriptor cone = sampled_cone(V, origin(2), opt);
    REQUIRE(!cone.directions.empty());
    for (const auto& u : cone.directions)
      CHECK(std::fabs(cp.eval(u.data())) / hmax < 1e-6);
  }
}

TEST_CASE("Lemma 5.3 containment: sign-change directions appear in the cone") {
  Polynomial f = parse_polynomial("x^2 - y^2*(1 - y)");
  HomogeneousForm h = algebraic_cone(f, origin(2));
  SignLocus locus = sign_change_locus(h, 256, 42);
  auto want = sign_change_directions(locus, 2, 256, 42);
  REQUIRE(want.size() == 4);  // two lines
  Variety V = Variety::hypersurface(f);
  SampledConeOptions opt;
  ConeDescriptor cone = symmetrize(sampled_cone(V, origin(2), opt));
  for (const auto& w : want) {
    bool matched = false;
    for (const auto& u : cone.directions)
      if (angular_distance(w, u, 2) <= 1e-2) matched = true;
    CHECK(matched);
  }
}

TEST_CASE("homothety invariance of the sampled cone") {
  Polynomial f = parse_polynomial("y^2 - x^3");
  Variety V = Variety::hypersurface(f);
  SampledConeOptions opt;
  ConeDescriptor base = sampled_cone(V, origin(2), opt);
  for (long lambda : {2, 10}) {
    Variety W = V.homothety(origin(2), Rational(lambda));
    ConeDescriptor other = sampled_cone(W, origin(2), opt);
    REQUIRE(other.directions.size() == base.directions.size());
    for (std::size_t i = 0; i < base.directions.size(); ++i)
      CHECK(angular_distance(base.directions[i], other.directions[i], 2) <= 2e-2);
  }
}

TEST_CASE("f_lambda converges to the leading form on the sphere") {
  Polynomial f = parse_polynomial("x*y^2 + x^5");
  HomogeneousForm h = leading_form(f);
  CompiledPoly cf = CompiledPoly::from(f);
  CompiledPoly ch = CompiledPoly::from(h.base.extended(2));
  Rng rng(13);
  for (int k = 0; k < 10; ++k) {
    Vec3 u = rng.unit_vector(2);
    double prev = 1e300;
    for (double lambda : {10.0, 100.0, 1000.0}) {
      Vec3 xs = mul(u, 1.0 / lambda);
      double fl = std::pow(lambda, h.degree) * cf.eval(xs.data());
      double diff = std::fabs(fl - ch.eval(u.data()));
      CHECK(diff <= prev + 1e-12);
      CHECK(diff <= 10.0 / lambda);  // rate from the degree gap
      prev = diff;
    }
  }
}

TEST_CASE("sampled cone determinism given the seed") {
  Variety V = Variety::hypersurface(parse_polynomial("x^2 - y^2*(1 - y)"));
  SampledConeOptions opt;
  ConeDescriptor a = sampled_cone(V, origin(2), opt);
  ConeDescriptor b = sampled_cone(V, origin(2), opt);
  REQUIRE(a.directions.size() == b.directions.size());
  for (std::size_t i = 0; i < a.directions.size(); ++i) {
    CHECK(a.directions[i][0] == b.directions[i][0]);
    CHECK(a.directions[i][1] == b.directions[i][1]);
  }
}

TEST_SUITE_END();
