#include <doctest.h>

#include "conelab/geometry.hpp"
#include "conelab/parser.hpp"

using namespace conelab;

TEST_SUITE_BEGIN("kernels");

namespace {

PointsSoA random_cloud(std::size_t n, int dim, std::uint64_t seed) {
  Rng rng(seed);
  PointsSoA pts;
  for (std::size_t i = 0; i < n; ++i) {
    double p[3] = {rng.uniform(-2, 2), dim > 1 ? rng.uniform(-2, 2) : 0.0,
                   dim > 2 ? rng.uniform(-2, 2) : 0.0};
    pts.push(p, 3);
  }
  return pts;
}

}  // namespace

TEST_CASE("compiled evaluation matches exact evaluation") {
  Polynomial f = parse_polynomial("z^3 - x^5*y - x*y^5 + 1/2*x^2 - 3");
  CompiledPoly cp = CompiledPoly::from(f);
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    double x[3] = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    std::vector<double> xv{x[0], x[1], x[2]};
    double exact = f.evaluate(std::span<const double>(xv));
    CHECK(cp.eval(x) == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("scalar and AVX2 eval_batch agree bit for bit") {
  if (!cpu_has_avx2()) return;
  Polynomial f = parse_polynomial("z^3 - x^5*y - x*y^5 + 1/2*x^2*z^2 - 3*y");
  CompiledPoly cp = CompiledPoly::from(f);
  for (std::size_t n : {std::size_t(1), std::size_t(4), std::size_t(7), std::size_t(1023)}) {
    PointsSoA pts = random_cloud(n, 3, 17 + n);
    std::vector<double> a(n, 0.0), b(n, 0.0);
    scalar_kernels::eval_batch(cp, pts, a);
    avx2_kernels::eval_batch(cp, pts, b);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(a[i] == b[i]);  // exact equality: same op order, no FMA
    }
  }
}

TEST_CASE("scalar and AVX2 min_dist2 agree exactly, including the index") {
  if (!cpu_has_avx2()) return;
  for (std::size_t n : {std::size_t(1), std::size_t(5), std::size_t(513)}) {
    PointsSoA pts = random_cloud(n, 3, 23 + n);
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
      double c[3] = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
      std::size_t skip = rep % 2 ? rng.next_u64() % n : SIZE_MAX;
      double da = 0, db = 0;
      std::size_t ia = scalar_kernels::min_dist2(pts, c, skip, &da);
      std::size_t ib = avx2_kernels::min_dist2(pts, c, skip, &db);
      CHECK(da == db);
      CHECK(ia == ib);
    }
  }
}

TEST_CASE("scalar and AVX2 max_dot agree exactly") {
  if (!cpu_has_avx2()) return;
  for (std::size_t n : {std::size_t(2), std::size_t(9), std::size_t(1024)}) {
    PointsSoA pts = random_cloud(n, 3, 31 + n);
    Rng rng(9);
    for (int rep = 0; rep < 20; ++rep) {
      Vec3 u = rng.unit_vector(3);
      double va = 0, vb = 0;
      std::size_t ia = scalar_kernels::max_dot(pts, u.data(), &va);
      std::size_t ib = avx2_kernels::max_dot(pts, u.data(), &vb);
      CHECK(va == vb);
      CHECK(ia == ib);
    }
  }
}

TEST_CASE("runtime dispatch honors the forced level") {
  SimdLevel prev = active_simd_level();
  force_simd_level(SimdLevel::scalar);
  CHECK(active_simd_level() == SimdLevel::scalar);
  force_simd_level(SimdLevel::avx2);
  if (cpu_has_avx2())
    CHECK(active_simd_level() == SimdLevel::avx2);
  else
    CHECK(active_simd_level() == SimdLevel::scalar);
  force_simd_level(prev);
}

TEST_CASE("dispatched results are identical across levels") {
  Polynomial f = parse_polynomial("x^2 + y^2 - 1");
  CompiledPoly cp = CompiledPoly::from(f);
  PointsSoA pts = random_cloud(257, 2, 41);
  std::vector<double> a(pts.size(), 0.0), b(pts.size(), 0.0);
  SimdLevel prev = active_simd_level();
  force_simd_level(SimdLevel::scalar);
  eval_batch(cp, pts, a);
  force_simd_level(SimdLevel::avx2);
  eval_batch(cp, pts, b);
  force_simd_level(prev);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("kernel exponent cap") {
  Polynomial f = parse_polynomial("x").pow(33);
  CHECK_THROWS_AS(CompiledPoly::from(f), poly_error);
}

TEST_CASE("pairwise sum is stable on a hard case") {
  std::vector<double> xs(1000, 0.1);
  CHECK(pairwise_sum(xs) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_SUITE_END();
