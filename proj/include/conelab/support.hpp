#pragma once

#include <optional>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/geometry.hpp"
#include "conelab/polynomial.hpp"

namespace conelab {

// Point cloud on Z(f) with unit gradient normals. Near-singular samples
// (vanishing gradient) carry no normal and are quarantined separately.
struct SampledHypersurface {
  int n = 2;
  PointsSoA points;
  std::vector<Vec3> normals;      // unit gradients, one per point
  std::vector<Vec3> quarantined;  // |grad f| < 1e-8 at these samples
  Box region;
  double spacing = 0;

  std::size_t size() const { return points.size(); }
  Vec3 point(std::size_t i) const {
    Vec3 p{};
    points.get(i, p.data());
    return p;
  }
};

SampledHypersurface sample_surface(const Polynomial& f, const Box& region, double spacing,
                                   std::uint64_t seed);

// Largest r <= r_max whose tangent ball at sample q on the given side
// (+1 along the normal, -1 against it) contains no other sample, with a
// slack of one spacing against false punctures.
double support_radius(const SampledHypersurface& S, std::size_t q, int side, double r_max);

struct SupportReport {
  std::vector<double> r_plus, r_minus;  // per sample
  double uniform_r = 0;         // inf over samples of max(r+, r-)
  double double_uniform_r = 0;  // inf over samples of min(r+, r-)
  double r_max = 0;
  double threshold = 0;
  std::vector<std::size_t> failures;  // samples with max-side radius < threshold
};

SupportReport positive_support(const SampledHypersurface& S, double r_max = 0,
                               double threshold = 0);

struct ConvexityReport {
  bool convex = false;
  int orientation = 1;  // s: inward normals are s * stored normal
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // violating (q, x)
};

// One-sided support test: some consistent orientation puts every sample on
// the nonnegative side of every tangent hyperplane (epsilon = 1e-6 slope).
ConvexityReport convexity_probe(const SampledHypersurface& S);

// Outward normal under the probe's orientation.
Vec3 outward_normal(const SampledHypersurface& S, const ConvexityReport& c, std::size_t i);

// Standard inversion through the sphere of the given center and radius.
Vec3 sphere_invert(const Vec3& x, const Vec3& center, double radius, int n);

}  // namespace conelab
