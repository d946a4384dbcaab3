// conelab: singular-point analysis of real algebraic hypersurfaces.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "conelab/gallery.hpp"
#include "conelab/parser.hpp"

using namespace conelab;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 42;
  double tol = 1e-2;
  int samples = 512;
  double resolution = 2e-3;
  bool json = false;
  bool quiet = false;
};

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> pt;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    Polynomial c = parse_polynomial(tok);
    if (!c.is_constant()) throw parse_error("point coordinates must be constants", pos);
    pt.push_back(c.constant_term());
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return pt;
}

Box parse_region(const std::string& text, int n) {
  std::vector<double> vals;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    vals.push_back(std::stod(text.substr(pos, comma == std::string::npos ? comma : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (int(vals.size()) != 2 * n) throw analysis_error("region needs lo,hi per coordinate");
  Box b;
  b.n = n;
  for (int i = 0; i < n; ++i) {
    b.lo[i] = vals[std::size_t(2 * i)];
    b.hi[i] = vals[std::size_t(2 * i + 1)];
  }
  return b;
}

void emit(const Json& j, const GlobalOpts& g, const std::string& human) {
  if (g.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"conelab: tangent cones, densities, support probes, and C1 classification "
               "of real algebraic hypersurfaces"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "deterministic seed (default 42)");
  app.add_option("--tol", g.tol, "angular tolerance in radians (default 1e-2)");
  app.add_option("--samples", g.samples, "sample budget per probe (default 512)");
  app.add_option("--resolution", g.resolution,
                 "measure-oracle cell size as a fraction of the radius (default 2e-3)");
  app.add_flag("--json", g.json, "JSON on stdout");
  app.add_flag("--quiet", g.quiet, "suppress diagnostics");

  std::string expr_text, at_text = "0,0", region_text, json_out, svg_dir, filter;
  std::vector<std::string> patch_texts;

  auto* cmd_parse = app.add_subcommand("parse", "parse an expression and print it canonically");
  cmd_parse->add_option("expr", expr_text)->required();

  auto* cmd_lf = app.add_subcommand("leading-form", "lowest-degree homogeneous part at a point");
  cmd_lf->add_option("expr", expr_text)->required();
  cmd_lf->add_option("--at", at_text, "analysis point (default origin)");

  auto* cmd_cone = app.add_subcommand("cone", "algebraic, sign-change, and sampled tangent cones");
  cmd_cone->add_option("expr", expr_text)->required();
  cmd_cone->add_option("--at", at_text);

  auto* cmd_mult = app.add_subcommand("multiplicity", "density and tangent-cone multiplicity");
  cmd_mult->add_option("expr", expr_text)->required();
  cmd_mult->add_option("--at", at_text);
  cmd_mult->add_option("--patch", patch_texts, "inequality constraint (>= 0), repeatable");

  auto* cmd_puiseux = app.add_subcommand("puiseux", "Newton polygon and branch expansion at the origin");
  cmd_puiseux->add_option("expr", expr_text)->required();

  auto* cmd_support = app.add_subcommand("support", "sample the surface and probe support radii");
  cmd_support->add_option("expr", expr_text)->required();
  cmd_support->add_option("--region", region_text, "box lo,hi per coordinate")->required();

  auto* cmd_closure = app.add_subcommand("closure", "projective closure and points at infinity");
  cmd_closure->add_option("expr", expr_text)->required();

  auto* cmd_classify = app.add_subcommand("classify", "regularity verdict at a point");
  cmd_classify->add_option("expr", expr_text)->required();
  cmd_classify->add_option("--at", at_text);

  auto* cmd_gallery = app.add_subcommand("gallery", "run the example corpus against expectations");
  cmd_gallery->add_option("--filter", filter, "only entries whose name contains this");
  cmd_gallery->add_option("--json", json_out, "write the JSON report to this file");
  cmd_gallery->add_option("--svg", svg_dir, "emit SVG/CSV plot data into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (app.count("--help") || e.get_name() == "CallForHelp") {
      app.exit(e);
      return 0;
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_parse->parsed()) {
      Polynomial f = parse_polynomial(expr_text);
      Json j;
      j["expr"] = f.str();
      j["nvars"] = f.nvars();
      j["degree"] = f.degree();
      j["terms"] = f.term_count();
      emit(j, g, f.str());
      return 0;
    }
    if (cmd_lf->parsed()) {
      Polynomial f = parse_polynomial(expr_text);
      auto p = parse_point(at_text);
      if (int(p.size()) != f.nvars()) throw analysis_error("point dimension mismatch");
      HomogeneousForm h = algebraic_cone(f, p);
      Json j;
      j["h"] = h.base.str();
      j["degree"] = h.degree;
      emit(j, g, "h = " + h.base.str() + "   (degree " + std::to_string(h.degree) + ")");
      return 0;
    }
    if (cmd_cone->parsed()) {
      Polynomial f = parse_polynomial(expr_text);
      auto p = parse_point(at_text);
      if (int(p.size()) != f.nvars()) throw analysis_error("point dimension mismatch");
      HomogeneousForm h = algebraic_cone(f, p);
      SignLocus locus = sign_change_locus(h, g.samples, g.seed);
      auto flat = flat_normal(h, locus);
      SampledConeOptions sc;
      sc.seed = g.seed;
      sc.tolerance = g.tol;
      sc.seeds_per_scale = g.samples;
      Variety V = Variety::hypersurface(f);
      ConeDescriptor cone = sampled_cone(V, p, sc);
      Json j;
      j["algebraic"] = Json{{"h", h.base.str()}, {"degree", h.degree}};
      Json lj;
      lj["odd_part"] = locus.odd_part.str();
      lj["even_part"] = locus.even_part.str();
      Json factors = Json::array();
      for (const auto& rf : locus.factors)
        factors.push_back(Json{{"factor", rf.factor.str()}, {"realizable", rf.realizable}});
      lj["factors"] = factors;
      j["sign_locus"] = lj;
      if (flat) {
        Json nrm = Json::array();
        for (int i = 0; i < f.nvars(); ++i) nrm.push_back((*flat)[i]);
        j["flat_normal"] = nrm;
      }
      j["sampled"] = cone_json(cone);
      j["symmetric"] = is_symmetric(symmetrize(cone), g.tol);
      std::string human = "h = " + h.base.str() + "; " +
                          (flat ? "flat cone" : "cone not flat") + "; " +
                          std::to_string(cone.directions.size()) + " sampled direction(s)";
      emit(j, g, human);
      return 0;
    }
    if (cmd_mult->parsed()) {
      Polynomial f = parse_polynomial(expr_text);
      auto p = parse_point(at_text);
      if (int(p.size()) != f.nvars()) throw analysis_error("point dimension mismatch");
      Variety V;
      std::vector<Polynomial> cons;
      for (const auto& t : patch_texts) cons.push_back(parse_polynomial(t));
      V.add_patch(f, cons);
      SampledConeOptions sc;
      sc.seed = g.seed;
      sc.tolerance = g.tol;
      sc.seeds_per_scale = g.samples;
      ConeDescriptor cone = sampled_cone(V, p, sc);
      Vec3 pd{};
      for (int i = 0; i < V.nvars; ++i) pd[i] = to_double(p[std::size_t(i)]);
      MultiplicityEstimate m = multiplicity(V, pd, cone, {}, g.resolution);
      Json j = multiplicity_json(m);
      j["cone"] = cone_json(cone);
      emit(j, g, "m = " + std::to_string(m.value) +
                     "  (density " + std::to_string(m.numerator.liminf_estimate) + ")");
      return 0;
    }
    if (cmd_puiseux->parsed()) {
      Polynomial f = parse_polynomial(expr_text);
      GermReport rep = classify_germ(f);
      Json j = germ_json(rep);
      std::string cls = j["verdict"].get<std::string>();
      emit(j, g, cls + " (" + std::to_string(rep.branches.size()) + " branch(es))");
      return 0;
    }
    if (cmd_support->parsed()) {
      Polynomial f = parse_polynomial(expr_text);
      Box region = parse_region(region_text, f.nvars());
      SampledHypersurface S = sample_surface(f, region, region.diameter() / 200, g.seed);
      SupportReport rep = positive_support(S);
      Json j = support_json(rep);
      j["quarantined"] = S.quarantined.size();
      emit(j, g, "uniform_r = " + std::to_string(rep.uniform_r) +
                     ", double_uniform_r = " + std::to_string(rep.double_uniform_r) + " (" +
                     std::to_string(S.size()) + " samples)");
      return 0;
    }
    if (cmd_closure->parsed()) {
      Polynomial f = parse_polynomial(expr_text);
      ClosureReport rep = projective_closure(f, std::max(g.samples, 256), g.seed);
      Json j = closure_json(rep);
      std::string human = "closure of degree " + std::to_string(rep.homogeneous.degree) + ": ";
      for (const auto& ip : rep.points) human += ip.verdict + " ";
      emit(j, g, human);
      return 0;
    }
    if (cmd_classify->parsed()) {
      Polynomial f = parse_polynomial(expr_text);
      auto p = parse_point(at_text);
      if (int(p.size()) != f.nvars()) throw analysis_error("point dimension mismatch");
      Variety V = Variety::hypersurface(f);
      ClassifyOptions copt;
      copt.seed = g.seed;
      copt.samples = g.samples;
      copt.tolerance = g.tol;
      copt.rel_resolution = g.resolution;
      Verdict v = classify_point(V, p, copt);
      Json j = verdict_json(v, p);
      emit(j, g, std::string(verdict_name(v.cls)) + "  [" + v.rule + "]");
      return 0;
    }
    if (cmd_gallery->parsed()) {
      GalleryOptions gopt;
      gopt.seed = g.seed;
      gopt.samples = g.samples;
      gopt.tolerance = g.tol;
      gopt.resolution = g.resolution;
      gopt.filter = filter;
      GalleryResult result = run_gallery(gopt);
      Json j = gallery_json(result, gopt);
      if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw analysis_error("cannot write " + json_out);
        out << j.dump(2) << "\n";
      } else if (g.json) {
        std::cout << j.dump(2) << "\n";
      }
      if (!svg_dir.empty()) emit_plot_data(result, gopt, svg_dir);
      if (!g.json || !json_out.empty()) {
        for (const auto& e : result.entries) {
          std::cout << (e.pass() ? "[pass] " : "[FAIL] ") << e.name;
          if (!g.quiet) {
            for (const auto& c : e.checks)
              std::cout << "  " << c.name << (c.pass ? "+" : "!") << "(" << c.detail << ")";
          }
          std::cout << "\n";
        }
        std::cout << (result.all_pass ? "all expectations met" : "some expectations FAILED")
                  << "\n";
      }
      if (!g.quiet) {
        for (const auto& e : result.entries)
          std::cerr << "# " << e.name << ": " << e.seconds << " s\n";
      }
      return result.all_pass ? 0 : 3;
    }
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
