#pragma once

#include <optional>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/polynomial.hpp"
#include "conelab/unipoly.hpp"

namespace conelab {

// Lower Newton polygon of a plane-curve germ. Support points are (i, j) =
// (x-exponent, y-exponent); edge slope gamma = di/(-dj) > 0 is the leading
// Puiseux exponent carried by that edge.
struct NewtonEdge {
  Rational slope;
  Polynomial face;  // terms of f supported on the edge
};

struct NewtonPolygon {
  std::vector<std::pair<int, int>> support;
  std::vector<NewtonEdge> lower_edges;  // sorted by slope
  int axis_x_mult = 0;  // split-off monomial factor x^a (the line x = 0)
  int axis_y_mult = 0;  // split-off monomial factor y^b (the line y = 0)
};

NewtonPolygon newton_polygon(const Polynomial& f);

struct PuiseuxTerm {
  Rational exponent;      // in units of the parameter variable
  Rational coeff;         // exact value when exact, else unused
  bool exact = true;
  double coeff_approx = 0;  // numeric coefficient (also set for exact terms)
};

// One place of the germ: parameter = t^e (parameter variable given by
// solved_var), dependent = sum of terms c_k t^(e * exponent_k).
struct PuiseuxBranch {
  int ramification = 1;  // e, minimal
  std::vector<PuiseuxTerm> terms;
  Rational truncation_order{0};  // exponents below this are complete
  bool complete = false;         // series terminated exactly
  bool real = true;
  bool numeric = false;  // an irrational face root was adjoined numerically
  int solved_var = 1;    // 1: y = series(x); 0: x = series(y)
  bool axis = false;     // the branch is a coordinate axis component
};

struct HalfBranch {
  std::size_t branch_index = 0;
  int t_sign = +1;
  Vec3 tangent_ray{};             // unit vector
  std::array<Rational, 2> ray_exact{};  // unnormalized exact direction
  bool exact = true;
};

struct PuiseuxOptions {
  std::optional<Rational> order;  // default 2 * (first edge slope) + 2
  int depth_cap = 48;
};

// Branches of the germ of Z(f) at the origin (square-free part of f;
// monomial axis factors become axis branches).
std::vector<PuiseuxBranch> puiseux_expand(const Polynomial& f,
                                          const PuiseuxOptions& opt = {});

std::vector<HalfBranch> half_branches(const std::vector<PuiseuxBranch>& branches);

enum class GermClass { Cusp, C1, MultiBranch, IsolatedPoint };

struct GermReport {
  GermClass cls = GermClass::IsolatedPoint;
  NewtonPolygon polygon;
  std::vector<PuiseuxBranch> branches;
  std::vector<HalfBranch> half_branch_list;
  std::vector<Vec3> ray_fan;  // dedup'd half-branch rays
};

// Corollary of the half-branch dichotomy: one real branch is a cusp or C1
// according to whether its two rays coincide or oppose; more branches give
// the full ray fan.
GermReport classify_germ(const Polynomial& f, const PuiseuxOptions& opt = {});

// Substitute the truncated branch into f; the valuation of the remainder
// (in parameter-variable units) must exceed truncation_order. Exact
// branches only.
Rational residual_valuation(const Polynomial& f, const PuiseuxBranch& branch);

}  // namespace conelab
