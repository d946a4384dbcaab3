#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/support.hpp"

namespace conelab {

// Homogeneous polynomial in n+1 variables; the last variable is the
// homogenizing coordinate w.
struct ProjectivePoly {
  Polynomial base;
  int degree = 0;
};

// f_bar(x) = x_n^d f(x_1/x_n, ..., x_{n-1}/x_n, 1/x_n): the hemisphere
// transform. Exact polynomial identity; applying it twice with the same
// degree recovers f.
Polynomial p_transform(const Polynomial& f, int d);

ProjectivePoly homogenize(const Polynomial& f);

// Chart x_chart = 1. The chart variable is removed; remaining variables
// keep their relative order (w stays last).
Polynomial dehomogenize(const ProjectivePoly& F, int chart);

// Sylvester inertia (positive, negative, zero) of a quadratic form, by
// exact rational congruence diagonalization.
std::array<int, 3> quadratic_inertia(const Polynomial& h);

struct InfinityPoint {
  int chart = 0;                   // variable index set to 1
  std::vector<Rational> point;     // exact chart coordinates (incl. w = 0)
  Vec3 direction{};                // unit direction in the affine variables
  bool exact = false;
  std::string verdict;             // smooth | C1_flat_cone | conical_singularity | singular
  std::optional<Polynomial> germ;  // leading form at the point (chart coords)
  std::array<int, 3> inertia{0, 0, 0};  // for quadratic germs
};

struct ClosureReport {
  ProjectivePoly homogeneous;
  std::vector<InfinityPoint> points;
};

ClosureReport projective_closure(const Polynomial& f, int samples = 256,
                                 std::uint64_t seed = 42);

struct DirectionCone {
  enum class Kind { recession, normal };
  Kind kind = Kind::recession;
  std::vector<Vec3> directions;   // unit, dedup'd at 1e-2 rad
  std::vector<int> confidence;    // per-direction count of passed probes
};

// Directions u with sample + t u on the K-side of every supporting
// hyperplane for every t in the ladder. Requires a passed convexity probe.
DirectionCone recession_cone_sample(const SampledHypersurface& S, const ConvexityReport& cvx,
                                    std::vector<double> t_ladder = {}, int grid = 720);

struct EntireGraphResult {
  std::optional<Vec3> direction;
  int lines_tested = 0;
  int lines_single = 0;
  std::string note;
};

// Wu's-lemma candidate direction (recession cone meets minus the normal
// cone), verified by exact root counting along random parallel lines; the
// intersections are filtered to the convex branch by the supporting
// halfspaces of the sample cloud.
EntireGraphResult entire_graph_direction(const Polynomial& f, const SampledHypersurface& S,
                                         const ConvexityReport& cvx, int k_lines = 64,
                                         std::uint64_t seed = 42);

}  // namespace conelab
