#include "conelab/geometry.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace conelab {

int max_threads() {
  if (const char* env = std::getenv("CONELAB_THREADS")) {
    int k = std::atoi(env);
    if (k >= 1) return k;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  int threads = max_threads();
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::size_t nt = std::min<std::size_t>(std::size_t(threads), count);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::atomic<std::size_t> next{0};
  for (std::size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<Vec3> sphere_grid(int n, int count) {
  std::vector<Vec3> dirs;
  dirs.reserve(std::size_t(count));
  if (n == 2) {
    for (int k = 0; k < count; ++k) {
      double a = 2.0 * M_PI * double(k) / double(count);
      dirs.push_back({std::cos(a), std::sin(a), 0.0});
    }
  } else {
    // Fibonacci sphere.
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      double z = 1.0 - 2.0 * (double(k) + 0.5) / double(count);
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double a = ga * double(k);
      dirs.push_back({r * std::cos(a), r * std::sin(a), z});
    }
  }
  return dirs;
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  if (xs.size() <= 8) {
    double s = 0;
    for (double v : xs) s += v;
    return s;
  }
  std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

ProjectionTarget ProjectionTarget::from(const Polynomial& f) {
  ProjectionTarget t;
  t.n = f.nvars();
  t.f = CompiledPoly::from(f);
  t.fabs = CompiledPoly::abs_from(f);
  auto g = f.gradient();
  for (int i = 0; i < t.n; ++i) t.grad[i] = CompiledPoly::from(g[std::size_t(i)]);
  return t;
}

double ProjectionTarget::residual_scale(const Vec3& x) const {
  Vec3 ax{std::fabs(x[0]), std::fabs(x[1]), std::fabs(x[2])};
  double s = fabs.eval(ax.data());
  return s > 1e-300 ? s : 1e-300;
}

double ProjectionTarget::value(const Vec3& x) const { return f.eval(x.data()); }

Vec3 ProjectionTarget::gradient(const Vec3& x) const {
  Vec3 g{};
  for (int i = 0; i < n; ++i) g[i] = grad[i].eval(x.data());
  return g;
}

std::optional<Vec3> polish_zero_on_sphere(const ProjectionTarget& t, Vec3 u, double rel_tol) {
  for (int it = 0; it < 80; ++it) {
    double v = t.value(u);
    if (std::fabs(v) <= rel_tol * t.residual_scale(u)) return u;
    Vec3 g = t.gradient(u);
    double gu = dot(g, u, t.n);
    Vec3 gt = g;
    for (int i = 0; i < t.n; ++i) gt[i] -= gu * u[i];
    double g2 = dot(gt, gt, t.n);
    if (g2 < 1e-250) return std::nullopt;
    for (int i = 0; i < t.n; ++i) u[i] -= v * gt[i] / g2;
    u = normalized(u, t.n);
  }
  double v = t.value(u);
  if (std::fabs(v) <= rel_tol * t.residual_scale(u)) return u;
  return std::nullopt;
}

std::optional<Vec3> project_to_zero(const ProjectionTarget& t, Vec3 seed,
                                    double rel_tol, int max_iter) {
  Vec3 x = seed;
  double fx = t.value(x);
  for (int it = 0; it < max_iter; ++it) {
    if (std::fabs(fx) <= rel_tol * t.residual_scale(x)) return x;
    Vec3 g = t.gradient(x);
    double g2 = dot(g, g, t.n);
    if (g2 < 1e-280) return std::nullopt;  // stuck near a critical point
    Vec3 step = mul(g, fx / g2);
    double damp = 1.0;
    for (int ls = 0; ls < 30; ++ls) {
      Vec3 cand = sub(x, mul(step, damp));
      double fc = t.value(cand);
      if (std::fabs(fc) < std::fabs(fx)) {
        x = cand;
        fx = fc;
        break;
      }
      damp *= 0.5;
      if (ls == 29) return std::nullopt;  // no descent
    }
  }
  if (std::fabs(fx) <= rel_tol * t.residual_scale(x)) return x;
  return std::nullopt;
}

}  // namespace conelab
