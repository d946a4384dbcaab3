#include "conelab/report.hpp"

#include <sstream>

namespace conelab {

namespace {

Json vec_json(const Vec3& v, int n) {
  Json a = Json::array();
  for (int i = 0; i < n; ++i) a.push_back(v[i]);
  return a;
}

const char* cone_kind_name(ConeDescriptor::Kind k) {
  switch (k) {
    case ConeDescriptor::Kind::Empty: return "empty";
    case ConeDescriptor::Kind::RayFan: return "ray_fan";
    case ConeDescriptor::Kind::Flat: return "flat";
    case ConeDescriptor::Kind::Algebraic: return "algebraic";
    case ConeDescriptor::Kind::Sampled: return "sampled";
  }
  return "empty";
}

}  // namespace

Json cone_json(const ConeDescriptor& c) {
  Json j;
  j["kind"] = cone_kind_name(c.kind);
  if (c.kind == ConeDescriptor::Kind::Flat) j["normal"] = vec_json(c.normal, c.n);
  if (c.kind == ConeDescriptor::Kind::Algebraic && c.form) {
    j["form"] = c.form->base.str();
    j["degree"] = c.form->degree;
  }
  if (!c.directions.empty()) {
    Json dirs = Json::array();
    for (const auto& d : c.directions) dirs.push_back(vec_json(d, c.n));
    j["directions"] = dirs;
  }
  if (!c.scale_ladder.empty()) j["scale_ladder"] = c.scale_ladder;
  if (c.tolerance > 0) j["tolerance"] = c.tolerance;
  return j;
}

Json density_json(const DensityEstimate& e) {
  Json j;
  j["dim"] = e.dim;
  j["radii"] = e.radii;
  j["measures"] = e.measures;
  j["ratios"] = e.ratios;
  j["liminf_estimate"] = e.liminf_estimate;
  j["resolution"] = e.resolution;
  j["monotone_trend"] = e.monotone_trend;
  return j;
}

Json multiplicity_json(const MultiplicityEstimate& m) {
  Json j;
  j["value"] = m.value;
  j["numerator"] = density_json(m.numerator);
  j["denominator"] = density_json(m.denominator);
  return j;
}

Json support_json(const SupportReport& r) {
  Json j;
  j["uniform_r"] = r.uniform_r;
  j["double_uniform_r"] = r.double_uniform_r;
  j["r_max"] = r.r_max;
  j["threshold"] = r.threshold;
  j["samples"] = r.r_plus.size();
  j["failures"] = r.failures.size();
  return j;
}

Json germ_json(const GermReport& g) {
  Json j;
  Json edges = Json::array();
  for (const auto& e : g.polygon.lower_edges) {
    Json ej;
    ej["slope"] = to_string(e.slope);
    ej["face"] = e.face.str();
    edges.push_back(ej);
  }
  j["edges"] = edges;
  Json branches = Json::array();
  for (std::size_t bi = 0; bi < g.branches.size(); ++bi) {
    const auto& b = g.branches[bi];
    Json bj;
    bj["e"] = b.ramification;
    Json terms = Json::array();
    for (const auto& t : b.terms) {
      Json tj = Json::array();
      tj.push_back(long(t.exponent.get_num().get_si()));
      tj.push_back(long(t.exponent.get_den().get_si()));
      tj.push_back(t.exact ? Json(to_string(t.coeff)) : Json(t.coeff_approx));
      terms.push_back(tj);
    }
    bj["terms"] = terms;
    bj["real"] = b.real;
    if (b.axis) bj["axis"] = b.solved_var == 0 ? "x=0" : "y=0";
    if (b.numeric) bj["numeric"] = true;
    bj["solved_var"] = b.solved_var == 1 ? "y(x)" : "x(y)";
    Json hbs = Json::array();
    for (const auto& h : g.half_branch_list) {
      if (h.branch_index != bi) continue;
      Json hj;
      hj["dir"] = vec_json(h.tangent_ray, 2);
      hbs.push_back(hj);
    }
    bj["half_branches"] = hbs;
    branches.push_back(bj);
  }
  j["branches"] = branches;
  switch (g.cls) {
    case GermClass::Cusp: j["verdict"] = "Cusp"; break;
    case GermClass::C1: j["verdict"] = "C1"; break;
    case GermClass::MultiBranch: j["verdict"] = "MultiBranch"; break;
    case GermClass::IsolatedPoint: j["verdict"] = "IsolatedPoint"; break;
  }
  return j;
}

Json closure_json(const ClosureReport& r) {
  Json j;
  j["homogeneous"] = r.homogeneous.base.str();
  j["degree"] = r.homogeneous.degree;
  Json pts = Json::array();
  for (const auto& p : r.points) {
    Json pj;
    pj["chart"] = p.chart;
    Json coords = Json::array();
    for (const auto& c : p.point) coords.push_back(to_string(c));
    pj["point"] = coords;
    pj["exact"] = p.exact;
    pj["cone_kind"] = p.germ ? p.germ->str() : "";
    pj["verdict"] = p.verdict;
    if (p.inertia[0] + p.inertia[1] + p.inertia[2] > 0) {
      pj["inertia"] = Json::array({p.inertia[0], p.inertia[1], p.inertia[2]});
    }
    pts.push_back(pj);
  }
  j["infinity_points"] = pts;
  return j;
}

Json verdict_json(const Verdict& v, std::span<const Rational> point) {
  Json j;
  Json pt = Json::array();
  for (const auto& c : point) pt.push_back(to_string(c));
  j["point"] = pt;
  j["class"] = verdict_name(v.cls);
  j["rule"] = v.rule;
  Json e;
  e["leading_form"] = v.evidence.leading_form;
  e["degree"] = v.evidence.degree;
  int n = v.evidence.sampled ? v.evidence.sampled->n : int(point.size());
  if (v.evidence.flat_normal) e["flat_normal"] = vec_json(*v.evidence.flat_normal, n);
  if (v.evidence.multiplicity) e["multiplicity"] = multiplicity_json(*v.evidence.multiplicity);
  if (v.evidence.support) {
    Json s = support_json(*v.evidence.support);
    s["ladder_uniform"] = v.evidence.support_ladder_uniform;
    s["ladder_double"] = v.evidence.support_ladder_double;
    e["support"] = s;
  }
  if (v.evidence.symmetry) e["symmetry"] = *v.evidence.symmetry;
  if (v.evidence.germ) e["branches"] = germ_json(*v.evidence.germ);
  if (v.evidence.sampled) e["sampled_cone"] = cone_json(*v.evidence.sampled);
  if (v.evidence.hoelder_exponent) e["hoelder_exponent"] = *v.evidence.hoelder_exponent;
  if (!v.evidence.nonflat_witness.empty()) {
    Json w = Json::array();
    for (const auto& d : v.evidence.nonflat_witness) w.push_back(vec_json(d, n));
    e["nonflat_witness"] = w;
  }
  if (v.evidence.normal_jump_witness) {
    Json w = Json::array();
    for (const auto& d : *v.evidence.normal_jump_witness) w.push_back(vec_json(d, n));
    e["normal_jump_witness"] = w;
  }
  j["evidence"] = e;
  j["caveats"] = v.caveats;
  return j;
}

std::string ratio_csv(const DensityEstimate& e) {
  std::ostringstream out;
  out << "r,measure,ratio\n";
  out.precision(17);
  for (std::size_t i = 0; i < e.radii.size(); ++i)
    out << e.radii[i] << "," << e.measures[i] << "," << e.ratios[i] << "\n";
  return out.str();
}

std::string samples_csv(const SampledHypersurface& S) {
  std::ostringstream out;
  out.precision(17);
  out << (S.n == 2 ? "x,y,nx,ny\n" : "x,y,z,nx,ny,nz\n");
  for (std::size_t i = 0; i < S.size(); ++i) {
    Vec3 p = S.point(i);
    for (int k = 0; k < S.n; ++k) out << p[k] << ",";
    for (int k = 0; k < S.n; ++k) out << S.normals[i][k] << (k + 1 < S.n ? "," : "\n");
  }
  return out.str();
}

std::string render_svg(const SvgScene& scene, int size_px) {
  std::ostringstream out;
  out.precision(8);
  double h = scene.view_half;
  auto X = [&](double x) { return (x + h) / (2 * h) * size_px; };
  auto Y = [&](double y) { return (h - y) / (2 * h) * size_px; };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size_px
      << "\" height=\"" << size_px << "\" viewBox=\"0 0 " << size_px << " " << size_px
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Axes.
  out << "<line x1=\"" << X(-h) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(h) << "\" y2=\""
      << Y(0) << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << X(0) << "\" y1=\"" << Y(-h) << "\" x2=\"" << X(0) << "\" y2=\""
      << Y(h) << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  for (const auto& s : scene.segments) {
    out << "<line x1=\"" << X(s[0][0]) << "\" y1=\"" << Y(s[0][1]) << "\" x2=\"" << X(s[1][0])
        << "\" y2=\"" << Y(s[1][1]) << "\" stroke=\"#1f4e99\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& [c, r] : scene.circles) {
    out << "<circle cx=\"" << X(c[0]) << "\" cy=\"" << Y(c[1]) << "\" r=\""
        << r / (2 * h) * size_px
        << "\" fill=\"none\" stroke=\"#2a9d8f\" stroke-width=\"1\"/>\n";
  }
  if (scene.has_marked) {
    for (const auto& ray : scene.rays) {
      out << "<line x1=\"" << X(scene.marked[0]) << "\" y1=\"" << Y(scene.marked[1])
          << "\" x2=\"" << X(scene.marked[0] + 0.5 * h * ray[0]) << "\" y2=\""
          << Y(scene.marked[1] + 0.5 * h * ray[1])
          << "\" stroke=\"#d62828\" stroke-width=\"2\"/>\n";
    }
    out << "<circle cx=\"" << X(scene.marked[0]) << "\" cy=\"" << Y(scene.marked[1])
        << "\" r=\"3\" fill=\"#d62828\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace conelab
