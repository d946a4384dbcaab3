#include "conelab/variety.hpp"

namespace conelab {

Variety Variety::hypersurface(Polynomial f) {
  Variety v;
  v.nvars = f.nvars();
  v.patches.push_back({std::move(f), {}});
  return v;
}

Variety& Variety::add_patch(Polynomial eq, std::vector<Polynomial> constraints) {
  nvars = std::max(nvars, eq.nvars());
  for (auto& c : constraints) nvars = std::max(nvars, c.nvars());
  patches.push_back({std::move(eq), std::move(constraints)});
  return *this;
}

Variety Variety::recentered(std::span<const Rational> p) const {
  Variety out;
  out.nvars = nvars;
  for (const auto& patch : patches) {
    Patch q;
    q.equation = patch.equation.extended(nvars).translate(p);
    for (const auto& c : patch.constraints) q.constraints.push_back(c.extended(nvars).translate(p));
    out.patches.push_back(std::move(q));
  }
  return out;
}

Variety Variety::homothety(std::span<const Rational> p, const Rational& lambda) const {
  // x in X_{p,lambda} iff p + (x - p)/lambda in X.
  Variety out;
  out.nvars = nvars;
  Rational inv = 1 / lambda;
  std::vector<Rational> minus_p(p.begin(), p.end());
  for (auto& v : minus_p) v = -v;
  std::vector<Rational> plus_p(p.begin(), p.end());
  auto transform = [&](const Polynomial& f) {
    // f(p + (x-p)/lambda) built by shifting, scaling, unshifting.
    Polynomial g = f.extended(nvars).translate(plus_p);  // g(x) = f(x + p)
    g = g.scale_arg(inv);                                // g(x) = f(x/lambda + p)
    return g.translate(minus_p);                         // f((x-p)/lambda + p)
  };
  for (const auto& patch : patches) {
    Patch q;
    q.equation = transform(patch.equation);
    for (const auto& c : patch.constraints) q.constraints.push_back(transform(c));
    out.patches.push_back(std::move(q));
  }
  return out;
}

CompiledPatch CompiledPatch::from(const Patch& p) {
  CompiledPatch c;
  c.target = ProjectionTarget::from(p.equation);
  for (const auto& g : p.constraints) {
    c.constraints.push_back(CompiledPoly::from(g));
    c.constraints_abs.push_back(CompiledPoly::abs_from(g));
  }
  return c;
}

bool CompiledPatch::satisfies_constraints(const Vec3& x, double rel_tol) const {
  Vec3 ax{std::fabs(x[0]), std::fabs(x[1]), std::fabs(x[2])};
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    double scale = constraints_abs[i].eval(ax.data()) + 1e-300;
    if (constraints[i].eval(x.data()) < -rel_tol * scale) return false;
  }
  return true;
}

std::vector<CompiledPatch> compile_variety(const Variety& V) {
  std::vector<CompiledPatch> out;
  out.reserve(V.patches.size());
  for (const auto& p : V.patches) {
    Patch q;
    q.equation = p.equation.extended(V.nvars);
    for (const auto& c : p.constraints) q.constraints.push_back(c.extended(V.nvars));
    out.push_back(CompiledPatch::from(q));
  }
  return out;
}

bool on_variety(const Variety& V, const Vec3& p, double rel_tol) {
  for (const auto& patch : V.patches) {
    Polynomial eq = patch.equation.extended(V.nvars);
    auto t = ProjectionTarget::from(eq);
    double scale = t.residual_scale(p);
    if (std::fabs(t.value(p)) > rel_tol * std::max(1.0, scale)) continue;
    auto cp = CompiledPatch::from(patch);
    if (cp.satisfies_constraints(p, rel_tol)) return true;
  }
  return false;
}

}  // namespace conelab
