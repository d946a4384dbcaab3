#pragma once

#include <json.hpp>
#include <string>

#include "conelab/classify.hpp"
#include "conelab/projective.hpp"

namespace conelab {

using Json = nlohmann::ordered_json;

Json cone_json(const ConeDescriptor& c);
Json density_json(const DensityEstimate& e);
Json multiplicity_json(const MultiplicityEstimate& m);
Json support_json(const SupportReport& r);
Json germ_json(const GermReport& g);
Json closure_json(const ClosureReport& r);
Json verdict_json(const Verdict& v, std::span<const Rational> point);

// CSV with header "r,measure,ratio".
std::string ratio_csv(const DensityEstimate& e);
// CSV with header "x,y[,z],nx,ny[,nz]".
std::string samples_csv(const SampledHypersurface& S);

// Static SVG: traced curve segments, optional tangent rays from the marked
// point, optional support circles.
struct SvgScene {
  std::vector<std::array<Vec3, 2>> segments;
  Vec3 marked{};
  bool has_marked = false;
  std::vector<Vec3> rays;          // unit directions from the marked point
  std::vector<std::pair<Vec3, double>> circles;
  double view_half = 1.5;
};
std::string render_svg(const SvgScene& scene, int size_px = 480);

}  // namespace conelab
