#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conelab/measure.hpp"
#include "conelab/puiseux.hpp"
#include "conelab/support.hpp"

namespace conelab {

enum class VerdictClass {
  RegularPoint,
  C1_Hypersurface,
  C11_Hypersurface,
  UnionOfC1Sheets,
  Cusp,
  NotC1,
  MultiBranch,
  Inconclusive,
};

const char* verdict_name(VerdictClass c);

struct Evidence {
  std::string leading_form;
  int degree = 0;
  std::optional<Vec3> flat_normal;
  std::optional<MultiplicityEstimate> multiplicity;
  std::optional<SupportReport> support;           // finest region of the ladder
  std::vector<double> support_ladder_uniform;     // uniform_r per region rung
  std::vector<double> support_ladder_double;      // double_uniform_r per rung
  std::optional<bool> symmetry;
  std::optional<GermReport> germ;                 // n = 2
  std::optional<ConeDescriptor> sampled;
  std::optional<double> hoelder_exponent;
  std::optional<double> normal_modulus_value;
  // NotC1 witnesses: either sign-change directions spanning more than a
  // hyperplane, or a close sample pair with a large normal angle.
  std::vector<Vec3> nonflat_witness;
  std::optional<std::array<Vec3, 4>> normal_jump_witness;  // p1, n1, p2, n2
};

struct Verdict {
  VerdictClass cls = VerdictClass::Inconclusive;
  std::string rule;
  Evidence evidence;
  std::vector<std::string> caveats;
};

struct ClassifyOptions {
  std::uint64_t seed = 42;
  int samples = 512;
  double tolerance = 1e-2;
  double rel_resolution = 2e-3;             // measure oracle cell size / r
  double support_region = 0.5;              // largest support probe half-width
  int support_rungs = 3;                    // shrink 2x per rung
  double support_threshold_factor = 1e-3;   // threshold = factor * smallest region scale
  double multiplicity_margin = 0.1;         // accept C1 when m <= 1.5 - margin
  bool run_hoelder = true;
  bool run_multiplicity = true;
};

// Decision pipeline over the computed evidence; see the verdict rules in
// the evidence record. p must lie on V exactly.
Verdict classify_point(const Variety& V, std::span<const Rational> p,
                       const ClassifyOptions& opt = {});

// Least-squares fit of log |N(x) - N| against log |x - p| over on-curve
// samples: the Hoelder exponent of the normal field at p.
double hoelder_probe(const Polynomial& f, std::span<const Rational> p, const Vec3& flat_normal,
                     int n_samples = 24, double d_lo = 1e-6, double d_hi = 1e-2);

// Locate singular points of {f = 0} in the region (grid + Newton on the
// gradient system, exact verification) and classify each.
std::vector<std::pair<std::vector<Rational>, Verdict>> classify_curve(
    const Polynomial& f, const Box& region, const ClassifyOptions& opt = {});

}  // namespace conelab
