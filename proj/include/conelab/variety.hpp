#pragma once

#include <span>
#include <vector>

#include "conelab/geometry.hpp"
#include "conelab/polynomial.hpp"

namespace conelab {

// One semialgebraic patch: {equation = 0} cut down by {constraint >= 0}.
struct Patch {
  Polynomial equation;
  std::vector<Polynomial> constraints;
};

// Union of patches sharing one variable list.
struct Variety {
  int nvars = 0;
  std::vector<Patch> patches;

  static Variety hypersurface(Polynomial f);
  Variety& add_patch(Polynomial eq, std::vector<Polynomial> constraints = {});

  // X translated so that p becomes the origin.
  Variety recentered(std::span<const Rational> p) const;
  // Homothetic expansion X_{p,lambda} = lambda (X - p) + p.
  Variety homothety(std::span<const Rational> p, const Rational& lambda) const;
};

// Numeric evaluation bundle for a patch.
struct CompiledPatch {
  ProjectionTarget target;
  std::vector<CompiledPoly> constraints;
  std::vector<CompiledPoly> constraints_abs;
  static CompiledPatch from(const Patch& p);
  // constraint >= -tol * scale for all constraints
  bool satisfies_constraints(const Vec3& x, double rel_tol = 1e-9) const;
};

std::vector<CompiledPatch> compile_variety(const Variety& V);

// True when p lies on some patch within the relative residual tolerance.
bool on_variety(const Variety& V, const Vec3& p, double rel_tol = 1e-9);

}  // namespace conelab
