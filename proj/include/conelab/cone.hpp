#pragma once

#include <optional>
#include <span>
#include <vector>

#include "conelab/factor.hpp"
#include "conelab/geometry.hpp"
#include "conelab/variety.hpp"

namespace conelab {

class analysis_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tangent cone at a point, in one of the shapes the pipeline produces.
struct ConeDescriptor {
  enum class Kind { Empty, RayFan, Flat, Algebraic, Sampled };
  Kind kind = Kind::Empty;
  std::vector<Vec3> directions;         // RayFan / Sampled, unit vectors
  Vec3 normal{};                        // Flat, canonical sign
  std::optional<HomogeneousForm> form;  // Algebraic
  std::vector<double> scale_ladder;     // Sampled
  double tolerance = 0;
  int n = 2;

  static ConeDescriptor flat(Vec3 normal, int n);
  static ConeDescriptor ray_fan(std::vector<Vec3> dirs, int n);
};

// Odd/even multiplicity split of a homogeneous form, with a realizability
// verdict per odd factor: does its real zero set actually carry a sign
// change (full-dimensional zero locus)?
struct RealizableFactor {
  Polynomial factor;
  bool realizable = false;
  std::vector<Vec3> evidence;  // sample directions with opposite signs
};

struct SignLocus {
  Polynomial odd_part;   // product of odd-multiplicity square-free factors
  Polynomial even_part;  // odd_part * even_part^2 * constant = input
  Rational constant{1};
  std::vector<RealizableFactor> factors;
};

// h_f at p: translate then take the lowest-degree homogeneous part.
// Requires f(p) = 0 exactly.
HomogeneousForm algebraic_cone(const Polynomial& f, std::span<const Rational> p);

SignLocus sign_change_locus(const HomogeneousForm& h, int samples, std::uint64_t seed);

// Unit normal of the sign-change locus when it is exactly one hyperplane.
std::optional<Vec3> flat_normal(const HomogeneousForm& h, const SignLocus& locus);

struct SampledConeOptions {
  // Point distance 1/lambda per rung. Deep rungs keep slow power-law germs
  // (sheet directions drift like rho^(1/e)) inside the angular tolerance.
  std::vector<double> scale_ladder{1e4, 1e6, 1e8};
  double tolerance = 1e-2;      // angular merge resolution (radians)
  double residual_tol = 1e-9;   // relative on-surface residual
  int seeds_per_scale = 512;
  std::uint64_t seed = 42;
};

// Directions present at every scale of the homothetic ladder.
ConeDescriptor sampled_cone(const Variety& V, std::span<const Rational> p,
                            const SampledConeOptions& opt);

bool is_symmetric(const ConeDescriptor& c, double angular_tol);
ConeDescriptor symmetrize(const ConeDescriptor& c);

// Dimension screen used by the symmetry theorem's hypothesis check: a
// single ray is never a hypersurface; in R^3 the direction set must not be
// contained in a line.
bool hypersurface_candidate(const ConeDescriptor& c);

// Unit directions on the sphere where the realizable odd factors vanish
// (the sign-change locus directions). Exact roots for n = 2, polished
// samples for n = 3.
std::vector<Vec3> sign_change_directions(const SignLocus& locus, int nvars,
                                         int samples, std::uint64_t seed);

// Empirical angular modulus of continuity of p -> T_pX over sample pairs:
// max normal angle / distance among nearby pairs. Reported, never assumed.
double normal_modulus(const std::vector<Vec3>& points, const std::vector<Vec3>& normals,
                      int n, double pair_distance);

}  // namespace conelab
