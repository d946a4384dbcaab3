#pragma once

#include <vector>

#include "conelab/cone.hpp"
#include "conelab/variety.hpp"

namespace conelab {

// Local Hausdorff measure ladder for D^d(X, p): radii, measures, and the
// ratios against H^d of the d-ball of radius r.
struct DensityEstimate {
  int dim = 1;                  // d: 1 for curves, 2 for surfaces
  std::vector<double> radii;    // strictly decreasing
  std::vector<double> measures;
  std::vector<double> ratios;
  double liminf_estimate = 0;   // min of the last three ratios
  double resolution = 0;        // relative cell size (fraction of r)
  bool monotone_trend = false;  // ratios non-increasing along the ladder
};

struct MultiplicityEstimate {
  DensityEstimate numerator;    // for X
  DensityEstimate denominator;  // for T_pX
  double value = 0;
};

// H^d(X cap B(p, r)) by cell tracing: marching squares (d = 1) with segment
// clipping to the disk, marching tetrahedra (d = 2) with triangle clipping
// to the ball. `resolution` is the absolute cell size, at most r/32.
// Patch constraints are tested at cell centers; straddling cells are
// subdivided once.
double local_measure(const Variety& V, const Vec3& p, double r, double resolution);

// Ratio ladder. `rel_resolution` is the cell size as a fraction of each
// radius (so every rung satisfies the local_measure precondition).
DensityEstimate lower_density(const Variety& V, const Vec3& p,
                              std::vector<double> radius_ladder, double rel_resolution);

std::vector<double> default_radius_ladder();  // {2^-3, ..., 2^-9}

// Density ratio of X against its tangent cone. Flat cones have exact
// denominator 1; ray fans contribute (#rays)/2 for d = 1; algebraic cones
// are measured by the same oracle on Z(h).
MultiplicityEstimate multiplicity(const Variety& V, const Vec3& p, const ConeDescriptor& cone,
                                  std::vector<double> radius_ladder, double rel_resolution);

// Length of the orthogonal projection of the traced curve segments onto the
// line through p with direction u (overlaps merged), for the projection
// sanity property.
double projected_length(const Variety& V, const Vec3& p, const Vec3& u, double r,
                        double resolution);

// Raw traced segments of a plane variety inside B(p, r) (plot data).
std::vector<std::array<Vec3, 2>> trace_curve(const Variety& V, const Vec3& p, double r,
                                             double resolution);

}  // namespace conelab
