#include <doctest.h>

#include "conelab/parser.hpp"
#include "conelab/projective.hpp"

using namespace conelab;

TEST_SUITE_BEGIN("projective");

TEST_CASE("p_transform maps the parabolic cylinder to the circular cylinder") {
  Polynomial f = parse_polynomial("2*z - x^2 - 1");
  Polynomial img = p_transform(f, 2);
  // z^2 f(x/z, y/z, 1/z) = 2z - x^2 - z^2 = -((z - 1)^2 + x^2 - 1)
  CHECK(img == parse_polynomial("2*z - x^2 - z^2"));
}

TEST_CASE("p_transform keeps hyperplanes linear") {
  Polynomial f = parse_polynomial("x + 2*y - 3*z");
  Polynomial img = p_transform(f, 1);
  CHECK(img.degree() == 1);
}

TEST_CASE("double application recovers the input") {
  Polynomial f = parse_polynomial("y - x^2");
  Polynomial once = p_transform(f, 2);
  Polynomial twice = p_transform(once, 2);
  CHECK(twice == f);
  Polynomial g = parse_polynomial("2*z - x^2 - 1");
  CHECK(p_transform(p_transform(g, 2), 2) == g);
}

TEST_CASE("homogenize and dehomogenize round trip") {
  Polynomial f = parse_polynomial("y - x^2");
  ProjectivePoly F = homogenize(f);
  CHECK(F.degree == 2);
  CHECK(F.base.min_degree() == 2);
  // Chart w = 1 restores f (w is the last variable).
  Polynomial back = dehomogenize(F, 2);
  CHECK(back == f);
}

TEST_CASE("quadratic inertia is exact") {
  CHECK(quadratic_inertia(parse_polynomial("x^2 + y^2 - z^2")) ==
        std::array<int, 3>{2, 1, 0});
  CHECK(quadratic_inertia(parse_polynomial("x^2 + y^2 + z^2")) ==
        std::array<int, 3>{3, 0, 0});
  // 2zw - x^2 - w^2 in chart coordinates (x, z, w).
  Polynomial g = parse_polynomial("2*y*z - x^2 - z^2");  // rename z<-w, y<-z
  CHECK(quadratic_inertia(g) == std::array<int, 3>{1, 2, 0});
  CHECK(quadratic_inertia(parse_polynomial("x*y")) == std::array<int, 3>{1, 1, 0});
}

TEST_CASE("parabola closure is smooth at its point at infinity") {
  ClosureReport rep = projective_closure(parse_polynomial("y - x^2"));
  REQUIRE(rep.points.size() == 1);
  CHECK(rep.points[0].verdict == "smooth");
  CHECK(rep.points[0].exact);
}

TEST_CASE("parabolic cylinder closure has a conical singularity at infinity") {
  ClosureReport rep = projective_closure(parse_polynomial("2*z - x^2 - 1"));
  bool found = false;
  for (const auto& p : rep.points) {
    if (p.verdict != "conical_singularity") continue;
    found = true;
    REQUIRE(p.germ.has_value());
    // Exact check: rank-3 indefinite quadratic germ, the projective cone.
    auto inert = quadratic_inertia(*p.germ);
    CHECK(inert[2] == 0);
    CHECK(std::min(inert[0], inert[1]) == 1);
    CHECK(p.exact);
  }
  CHECK(found);
}

TEST_CASE("ding-dong graph has vertical-asymptote points at infinity") {
  ClosureReport rep = projective_closure(parse_polynomial("y*(1 - x^2) - 1"));
  CHECK(rep.points.size() >= 2);  // [0:1] plus the asymptote directions
}

TEST_CASE("recession cone of the parabola region is the vertical ray") {
  Polynomial f = parse_polynomial("y - x^2");
  SampledHypersurface S = sample_surface(f, Box::square(2, 2), 0.02, 42);
  ConvexityReport cvx = convexity_probe(S);
  REQUIRE(cvx.convex);
  DirectionCone rc = recession_cone_sample(S, cvx);
  REQUIRE(!rc.directions.empty());
  for (const auto& d : rc.directions) CHECK(angular_distance(d, Vec3{0, 1, 0}, 2) < 0.35);
  bool has_up = false;
  for (const auto& d : rc.directions)
    if (angular_distance(d, Vec3{0, 1, 0}, 2) < 1e-2) has_up = true;
  CHECK(has_up);
}

TEST_CASE("recession cone of a half plane is the closed upper half circle") {
  Polynomial f = parse_polynomial("y").extended(2);
  SampledHypersurface S = sample_surface(f, Box::square(2, 2), 0.02, 42);
  ConvexityReport cvx = convexity_probe(S);
  REQUIRE(cvx.convex);
  DirectionCone rc = recession_cone_sample(S, cvx);
  // Roughly half of the 720 grid directions survive.
  CHECK(rc.directions.size() > 300);
  CHECK(rc.directions.size() < 400);
}

TEST_CASE("bounded convex sets have an empty sampled recession cone") {
  Polynomial f = parse_polynomial("x^2 + y^2 - 1");
  SampledHypersurface S = sample_surface(f, Box::square(2, 2), 0.02, 42);
  ConvexityReport cvx = convexity_probe(S);
  REQUIRE(cvx.convex);
  DirectionCone rc = recession_cone_sample(S, cvx);
  CHECK(rc.directions.empty());
  EntireGraphResult eg = entire_graph_direction(f, S, cvx, 16, 42);
  CHECK_FALSE(eg.direction.has_value());
}

TEST_CASE("recession cone shrinks as the ladder extends") {
  Polynomial f = parse_polynomial("y - x^2");
  SampledHypersurface S = sample_surface(f, Box::square(2, 2), 0.02, 42);
  ConvexityReport cvx = convexity_probe(S);
  REQUIRE(cvx.convex);
  DirectionCone shorter = recession_cone_sample(S, cvx, {0.5, 1.0});
  DirectionCone longer = recession_cone_sample(S, cvx, {0.5, 1.0, 64.0});
  CHECK(longer.directions.size() <= shorter.directions.size());
  for (const auto& d : longer.directions) {
    bool inside = false;
    for (const auto& s : shorter.directions)
      if (angular_distance(d, s, 2) < 2e-2) inside = true;
    CHECK(inside);
  }
}

TEST_CASE("the parabola is an entire graph in direction (0,1)") {
  Polynomial f = parse_polynomial("y - x^2");
  SampledHypersurface S = sample_surface(f, Box::square(2, 2), 0.02, 42);
  ConvexityReport cvx = convexity_probe(S);
  REQUIRE(cvx.convex);
  EntireGraphResult eg = entire_graph_direction(f, S, cvx, 16, 42);
  REQUIRE(eg.direction.has_value());
  CHECK(angular_distance(*eg.direction, Vec3{0, 1, 0}, 2) < 1e-2);
  CHECK(eg.lines_single == 16);
}

TEST_CASE("the ding-dong branch is not an entire graph") {
  Polynomial f = parse_polynomial("y*(1 - x^2) - 1");
  Box region;
  region.n = 2;
  region.lo = {-0.95, 0.5, 0};
  region.hi = {0.95, 8.0, 0};
  SampledHypersurface S = sample_surface(f, region, 0.02, 42);
  ConvexityReport cvx = convexity_probe(S);
  REQUIRE(cvx.convex);
  EntireGraphResult eg = entire_graph_direction(f, S, cvx, 16, 42);
  CHECK_FALSE(eg.direction.has_value());
}

TEST_CASE("verified direction lies in rc and opposite the normal cone") {
  Polynomial f = parse_polynomial("y - x^2");
  SampledHypersurface S = sample_surface(f, Box::square(2, 2), 0.02, 42);
  ConvexityReport cvx = convexity_probe(S);
  EntireGraphResult eg = entire_graph_direction(f, S, cvx, 16, 42);
  REQUIRE(eg.direction.has_value());
  DirectionCone rc = recession_cone_sample(S, cvx);
  bool in_rc = false;
  for (const auto& d : rc.directions)
    if (angular_distance(d, *eg.direction, 2) < 1e-2) in_rc = true;
  CHECK(in_rc);
  bool opp_normal = false;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (angular_distance(mul(*eg.direction, -1.0), outward_normal(S, cvx, i), 2) < 1e-2)
      opp_normal = true;
  CHECK(opp_normal);
}

TEST_SUITE_END();
