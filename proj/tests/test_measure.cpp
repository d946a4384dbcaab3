#include <doctest.h>

#include <cmath>

#include "conelab/measure.hpp"
#include "conelab/parser.hpp"

using namespace conelab;

TEST_SUITE_BEGIN("measure");

namespace {
Variety line_union_parabola() {
  Variety v;
  v.add_patch(parse_polynomial("y").extended(2));
  v.add_patch(parse_polynomial("y - x^2"));
  return v;
}

Variety line_union_half_parabola() {
  Variety v;
  v.add_patch(parse_polynomial("y").extended(2));
  v.add_patch(parse_polynomial("y - x^2"), {parse_polynomial("x").extended(2)});
  return v;
}
}  // namespace

TEST_CASE("chord of a line through the center") {
  Variety v = Variety::hypersurface(parse_polynomial("y").extended(2));
  double len = local_measure(v, Vec3{0, 0, 0}, 1.0, 1.0 / 128);
  CHECK(len == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("circle arc length near (1,0)") {
  Variety v = Variety::hypersurface(parse_polynomial("x^2 + y^2 - 1"));
  double len = local_measure(v, Vec3{1, 0, 0}, 0.1, 0.1 / 256);
  CHECK(len == doctest::Approx(4 * std::asin(0.05)).epsilon(0.01));
}

TEST_CASE("resolution precondition") {
  Variety v = Variety::hypersurface(parse_polynomial("y").extended(2));
  CHECK_THROWS_AS(local_measure(v, Vec3{0, 0, 0}, 1.0, 0.1), analysis_error);
}

TEST_CASE("spherical cap area") {
  Variety v = Variety::hypersurface(parse_polynomial("x^2 + y^2 + z^2 - 1"));
  double area = local_measure(v, Vec3{1, 0, 0}, 0.1, 0.1 / 40);
  CHECK(area == doctest::Approx(M_PI * 0.01).epsilon(0.02));
}

TEST_CASE("oracle converges at first order") {
  Variety v = Variety::hypersurface(parse_polynomial("x^2 + y^2 - 1"));
  double exact = 4 * std::asin(0.25);
  double e1 = std::fabs(local_measure(v, Vec3{1, 0, 0}, 0.5, 0.5 / 64) - exact);
  double e2 = std::fabs(local_measure(v, Vec3{1, 0, 0}, 0.5, 0.5 / 128) - exact);
  CHECK(e2 < std::max(2 * e1, 1e-6));
}

TEST_CASE("line density is 1") {
  Variety v = Variety::hypersurface(parse_polynomial("y").extended(2));
  DensityEstimate d = lower_density(v, Vec3{0, 0, 0}, {}, 2e-3);
  CHECK(d.liminf_estimate == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("cusp density is 1") {
  Variety v = Variety::hypersurface(parse_polynomial("y^2 - x^3"));
  DensityEstimate d = lower_density(v, Vec3{0, 0, 0}, {}, 2e-3);
  CHECK(d.liminf_estimate == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("line union parabola has density 2") {
  DensityEstimate d = lower_density(line_union_parabola(), Vec3{0, 0, 0}, {}, 2e-3);
  CHECK(d.liminf_estimate == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("multiplicities of the Figure-1 style instances") {
  ConeDescriptor flat = ConeDescriptor::flat(Vec3{0, 1, 0}, 2);
  MultiplicityEstimate m2 =
      multiplicity(line_union_parabola(), Vec3{0, 0, 0}, flat, {}, 2e-3);
  CHECK(m2.value == doctest::Approx(2.0).epsilon(0.05));

  MultiplicityEstimate m32 =
      multiplicity(line_union_half_parabola(), Vec3{0, 0, 0}, flat, {}, 2e-3);
  CHECK(m32.value == doctest::Approx(1.5).epsilon(0.05));

  ConeDescriptor ray = ConeDescriptor::ray_fan({Vec3{1, 0, 0}}, 2);
  Variety cusp = Variety::hypersurface(parse_polynomial("y^2 - x^3"));
  MultiplicityEstimate mc = multiplicity(cusp, Vec3{0, 0, 0}, ray, {}, 2e-3);
  CHECK(mc.denominator.liminf_estimate == doctest::Approx(0.5));
  CHECK(mc.value == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("smooth points have density and multiplicity 1") {
  Variety v = Variety::hypersurface(parse_polynomial("y - x^2"));
  DensityEstimate d = lower_density(v, Vec3{0, 0, 0}, {}, 2e-3);
  CHECK(d.liminf_estimate == doctest::Approx(1.0).epsilon(0.02));
  ConeDescriptor flat = ConeDescriptor::flat(Vec3{0, 1, 0}, 2);
  MultiplicityEstimate m = multiplicity(v, Vec3{0, 0, 0}, flat, {}, 2e-3);
  CHECK(m.value == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("multiplicity is stable under halving the radius ladder") {
  Variety v = line_union_parabola();
  ConeDescriptor flat = ConeDescriptor::flat(Vec3{0, 1, 0}, 2);
  std::vector<double> ladder = default_radius_ladder();
  MultiplicityEstimate a = multiplicity(v, Vec3{0, 0, 0}, flat, ladder, 2e-3);
  for (auto& r : ladder) r /= 2;
  MultiplicityEstimate b = multiplicity(v, Vec3{0, 0, 0}, flat, ladder, 2e-3);
  CHECK(std::fabs(a.value - b.value) / a.value < 0.05);
}

TEST_CASE("empty cone is rejected") {
  Variety v = Variety::hypersurface(parse_polynomial("y").extended(2));
  ConeDescriptor empty;
  empty.n = 2;
  CHECK_THROWS_AS(multiplicity(v, Vec3{0, 0, 0}, empty, {}, 2e-3), analysis_error);
}

TEST_CASE("projection to the tangent line never exceeds the curve length") {
  const char* exprs[] = {"y^2 - x^3", "y - x^2", "x^2 + y^2 - 1"};
  for (const char* s : exprs) {
    Variety v = Variety::hypersurface(parse_polynomial(s));
    Vec3 p = std::string(s) == "x^2 + y^2 - 1" ? Vec3{1, 0, 0} : Vec3{0, 0, 0};
    double r = 0.25;
    double len = local_measure(v, p, r, r / 256);
    double proj = projected_length(v, p, Vec3{1, 0, 0}, r, r / 256);
    CHECK(proj <= len * (1 + 0.01) + 1e-9);
  }
}

TEST_CASE("constrained patch measures the half sheet only") {
  Variety half;
  half.add_patch(parse_polynomial("y - x^2"), {parse_polynomial("x").extended(2)});
  Variety full = Variety::hypersurface(parse_polynomial("y - x^2"));
  double h = local_measure(half, Vec3{0, 0, 0}, 0.25, 0.25 / 512);
  double f = local_measure(full, Vec3{0, 0, 0}, 0.25, 0.25 / 512);
  CHECK(h == doctest::Approx(f / 2).epsilon(0.02));
}

TEST_SUITE_END();
