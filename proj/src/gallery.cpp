#include "conelab/gallery.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "conelab/parser.hpp"

namespace conelab {

const char* kToolVersion = "conelab 0.1.0";

const std::vector<GalleryEntry>& gallery_corpus() {
  static const std::vector<GalleryEntry> corpus = [] {
    std::vector<GalleryEntry> c;
    auto add = [&](GalleryEntry e) { c.push_back(std::move(e)); };

    {
      GalleryEntry e;
      e.name = "cusp";
      e.patches = {{"y^2 - x^3", {}}};
      e.point = {"0", "0"};
      e.source = "standard cusp (density 1, multiplicity 2)";
      e.expected_class = "Cusp";
      e.expected_density = 1.0;
      e.expected_multiplicity = 2.0;
      add(e);
    }
    {
      GalleryEntry e;
      e.name = "deltoid_n2";
      e.patches = {{"y^3 - x^4", {}}};
      e.point = {"0", "0"};
      e.source = "convex family exponent 1/3";
      e.expected_class = "C1_Hypersurface";
      e.expected_hoelder = 1.0 / 3.0;
      e.expect_symmetric_cone = true;
      add(e);
    }
    {
      GalleryEntry e;
      e.name = "deltoid_n3";
      e.patches = {{"y^5 - x^6", {}}};
      e.point = {"0", "0"};
      e.source = "convex family exponent 1/5";
      e.expected_class = "C1_Hypersurface";
      e.expected_hoelder = 1.0 / 5.0;
      add(e);
    }
    {
      GalleryEntry e;
      e.name = "deltoid_n2_closed";
      e.patches = {{"(1 - y)*y^3 - x^4", {}}};
      e.point = {"0", "0"};
      e.source = "closed convex deltoid, n = 2";
      e.expected_class = "C1_Hypersurface";
      add(e);
    }
    {
      GalleryEntry e;
      e.name = "deltoid_n3_closed";
      e.patches = {{"(1 - y)*y^5 - x^6", {}}};
      e.point = {"0", "0"};
      e.source = "closed convex deltoid, n = 3";
      e.expected_class = "C1_Hypersurface";
      add(e);
    }
    {
      GalleryEntry e;
      e.name = "node";
      e.patches = {{"x^2 - y^2*(1 - y)", {}}};
      e.point = {"0", "0"};
      e.source = "ding-dong full curve: node at the origin";
      e.expected_class = "MultiBranch";
      e.expect_symmetric_cone = true;
      add(e);
    }
    {
      GalleryEntry e;
      e.name = "piriform";
      e.patches = {{"x^2 - y^3*(1 - y)", {}}};
      e.point = {"0", "0"};
      e.source = "pear-shaped quartic: cusp at the origin";
      e.expected_class = "Cusp";
      add(e);
    }
    {
      GalleryEntry e;
      e.name = "saddle_sextic";
      e.patches = {{"z^3 - x^5*y - x*y^5", {}}};
      e.point = {"0", "0", "0"};
      e.source = "flat cone, nonuniform support, not C1";
      e.expected_class = "NotC1";
      add(e);
    }
    {
      GalleryEntry e;
      e.name = "fermat_cubic";
      e.patches = {{"x^3 + y^3 - z^3", {}}};
      e.point = {"0", "0", "0"};
      e.source = "cone over a cubic: tangent cone is the surface itself";
      e.expected_class = "NotC1";
      e.expect_symmetric_cone = true;
      add(e);
    }
    {
      GalleryEntry e;
      e.name = "parabolic_cylinder";
      e.patches = {{"2*z - x^2 - 1", {}}};
      e.point = {"0", "0", "1/2"};
      e.source = "projective closure develops a conical singularity";
      e.expect_conical_closure = true;
      add(e);
    }
    {
      GalleryEntry e;
      e.name = "dingdong_graph";
      e.patches = {{"y*(1 - x^2) - 1", {}}};
      e.point = {"0", "1"};
      e.source = "strictly convex branch, not an entire graph";
      e.expect_entire_graph = false;
      Box b;
      b.n = 2;
      b.lo = {-0.95, 0.5, 0};
      b.hi = {0.95, 8.0, 0};
      e.sample_region = b;  // the convex branch inside the slab |x| < 1
      add(e);
    }
    {
      GalleryEntry e;
      e.name = "parabola";
      e.patches = {{"y - x^2", {}}};
      e.point = {"0", "0"};
      e.source = "entire graph in the vertical direction";
      e.expect_entire_graph = true;
      add(e);
    }
    {
      GalleryEntry e;
      e.name = "line_parabola";
      e.patches = {{"y", {}}, {"y - x^2", {}}};
      e.point = {"0", "0"};
      e.source = "two tangent sheets: multiplicity 2, density 2";
      e.expected_multiplicity = 2.0;
      e.expected_density = 2.0;
      add(e);
    }
    {
      GalleryEntry e;
      e.name = "line_half_parabola";
      e.patches = {{"y", {}}, {"y - x^2", {"x"}}};
      e.point = {"0", "0"};
      e.source = "line plus half sheet: multiplicity 3/2, density 3/2";
      e.expected_multiplicity = 1.5;
      e.expected_density = 1.5;
      add(e);
    }
    return c;
  }();
  return corpus;
}

Variety entry_variety(const GalleryEntry& e) {
  Variety v;
  for (const auto& p : e.patches) {
    Polynomial eq = parse_polynomial(p.equation);
    std::vector<Polynomial> cons;
    for (const auto& c : p.constraints) cons.push_back(parse_polynomial(c));
    int nv = eq.nvars();
    for (const auto& c : cons) nv = std::max(nv, c.nvars());
    nv = std::max(nv, v.nvars);
    v.nvars = nv;
    v.add_patch(std::move(eq), std::move(cons));
  }
  // Harmonize the variable counts.
  for (auto& p : v.patches) {
    p.equation = p.equation.extended(v.nvars);
    for (auto& c : p.constraints) c = c.extended(v.nvars);
  }
  return v;
}

std::vector<Rational> entry_point(const GalleryEntry& e) {
  std::vector<Rational> pt;
  for (const auto& s : e.point) {
    Polynomial c = parse_polynomial(s);
    pt.push_back(c.constant_term());
  }
  return pt;
}

namespace {

bool within(double value, double target, double rel_tol) {
  return std::fabs(value - target) <= rel_tol * std::fabs(target);
}

EntryResult run_entry(const GalleryEntry& e, const GalleryOptions& opt) {
  EntryResult res;
  res.name = e.name;
  res.source = e.source;
  auto t0 = std::chrono::steady_clock::now();
  Json rep;
  rep["name"] = e.name;
  rep["source"] = e.source;
  try {
    Variety V = entry_variety(e);
    std::vector<Rational> p = entry_point(e);
    ClassifyOptions copt;
    copt.seed = opt.seed;
    copt.samples = opt.samples;
    copt.tolerance = opt.tolerance;
    copt.rel_resolution = opt.resolution;

    if (!e.expected_class.empty()) {
      Verdict v = classify_point(V, p, copt);
      rep["verdict"] = verdict_json(v, p);
      res.checks.push_back({"class", verdict_name(v.cls) == e.expected_class,
                            std::string(verdict_name(v.cls)) + " vs " + e.expected_class});
      if (e.expected_hoelder) {
        bool ok = v.evidence.hoelder_exponent &&
                  within(*v.evidence.hoelder_exponent, *e.expected_hoelder, 0.10);
        res.checks.push_back(
            {"hoelder", ok,
             v.evidence.hoelder_exponent ? std::to_string(*v.evidence.hoelder_exponent)
                                         : "missing"});
      }
      if (e.expect_symmetric_cone) {
        bool ok = v.evidence.symmetry.has_value() && *v.evidence.symmetry;
        res.checks.push_back({"symmetry", ok, ok ? "symmetric" : "not verified"});
      }
    }

    if (e.expected_multiplicity || e.expected_density) {
      SampledConeOptions sc;
      sc.seed = opt.seed;
      sc.tolerance = opt.tolerance;
      sc.seeds_per_scale = opt.samples;
      ConeDescriptor cone = sampled_cone(V, p, sc);
      Vec3 pd{};
      for (int i = 0; i < V.nvars; ++i) pd[i] = to_double(p[std::size_t(i)]);
      MultiplicityEstimate m = multiplicity(V, pd, cone, {}, opt.resolution);
      rep["multiplicity"] = multiplicity_json(m);
      rep["cone"] = cone_json(cone);
      if (e.expected_density) {
        bool ok = within(m.numerator.liminf_estimate, *e.expected_density, 0.05);
        res.checks.push_back(
            {"density", ok, std::to_string(m.numerator.liminf_estimate)});
      }
      if (e.expected_multiplicity) {
        bool ok = within(m.value, *e.expected_multiplicity, 0.05);
        res.checks.push_back({"multiplicity", ok, std::to_string(m.value)});
      }
    }

    if (e.expect_conical_closure) {
      Polynomial f = V.patches.front().equation;
      ClosureReport cr = projective_closure(f, std::max(opt.samples, 256), opt.seed);
      rep["closure"] = closure_json(cr);
      bool found = false;
      for (const auto& ip : cr.points)
        if (ip.verdict == "conical_singularity") found = true;
      res.checks.push_back({"conical_closure", found,
                            found ? "conical singularity found" : "no conical point"});
    }

    if (e.expect_entire_graph.has_value()) {
      Polynomial f = V.patches.front().equation;
      Box region = e.sample_region ? *e.sample_region : Box::square(2.0, V.nvars);
      SampledHypersurface S = sample_surface(f, region, 0.02, opt.seed);
      ConvexityReport cvx = convexity_probe(S);
      EntireGraphResult eg = entire_graph_direction(f, S, cvx, 64, opt.seed);
      Json egj;
      egj["note"] = eg.note;
      egj["lines_tested"] = eg.lines_tested;
      egj["lines_single"] = eg.lines_single;
      if (eg.direction) {
        Json d = Json::array();
        for (int i = 0; i < V.nvars; ++i) d.push_back((*eg.direction)[i]);
        egj["direction"] = d;
      }
      rep["entire_graph"] = egj;
      if (*e.expect_entire_graph) {
        bool ok = eg.direction && eg.lines_single == 64 &&
                  angular_distance(*eg.direction, Vec3{0, 1, 0}, V.nvars) < 1e-2;
        res.checks.push_back(
            {"entire_graph", ok,
             eg.direction ? "direction verified " + std::to_string(eg.lines_single) + "/64"
                          : eg.note});
      } else {
        bool ok = !eg.direction.has_value();
        res.checks.push_back({"not_entire_graph", ok, eg.note});
      }
    }
  } catch (const std::exception& ex) {
    res.checks.push_back({"run", false, ex.what()});
    rep["error"] = ex.what();
  }
  res.report = std::move(rep);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace

GalleryResult run_gallery(const GalleryOptions& opt) {
  const auto& corpus = gallery_corpus();
  std::vector<const GalleryEntry*> selected;
  for (const auto& e : corpus)
    if (opt.filter.empty() || e.name.find(opt.filter) != std::string::npos)
      selected.push_back(&e);
  GalleryResult result;
  result.entries.resize(selected.size());
  parallel_for(selected.size(),
               [&](std::size_t i) { result.entries[i] = run_entry(*selected[i], opt); });
  for (const auto& e : result.entries) result.all_pass = result.all_pass && e.pass();
  return result;
}

Json gallery_json(const GalleryResult& result, const GalleryOptions& opt) {
  Json j;
  j["tool"] = kToolVersion;
  j["seed"] = opt.seed;
  Json options;
  options["samples"] = opt.samples;
  options["tolerance"] = opt.tolerance;
  options["resolution"] = opt.resolution;
  if (!opt.filter.empty()) options["filter"] = opt.filter;
  j["options"] = options;
  Json entries = Json::array();
  for (const auto& e : result.entries) {
    Json ej;
    ej["name"] = e.name;
    ej["source"] = e.source;
    Json checks = Json::array();
    for (const auto& c : e.checks) {
      Json cj;
      cj["check"] = c.name;
      cj["pass"] = c.pass;
      cj["detail"] = c.detail;
      checks.push_back(cj);
    }
    ej["checks"] = checks;
    ej["pass"] = e.pass();
    ej["report"] = e.report;
    entries.push_back(ej);
  }
  j["entries"] = entries;
  j["all_pass"] = result.all_pass;
  return j;
}

void emit_plot_data(const GalleryResult& result, const GalleryOptions& opt,
                    const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw analysis_error("unwritable plot directory: " + dir);
  const auto& corpus = gallery_corpus();
  for (const auto& res : result.entries) {
    const GalleryEntry* entry = nullptr;
    for (const auto& e : corpus)
      if (e.name == res.name) entry = &e;
    if (!entry) continue;
    Variety V = entry_variety(*entry);
    std::vector<Rational> p = entry_point(*entry);
    Vec3 pd{};
    for (int i = 0; i < V.nvars; ++i) pd[i] = to_double(p[std::size_t(i)]);

    SvgScene scene;
    scene.view_half = 1.5;
    scene.marked = pd;
    scene.has_marked = true;
    if (V.nvars == 2) {
      scene.segments = trace_curve(V, Vec3{0, 0, 0}, 1.5, 3e-3);
    } else {
      // Slice z = p_z for surfaces.
      std::vector<Rational> slice_pt = {Rational(0), Rational(0), p[2]};
      Variety slice;
      slice.nvars = 2;
      for (const auto& patch : V.patches) {
        Polynomial eq3 = patch.equation.extended(3);
        Polynomial eq2(2);
        Polynomial z_val = Polynomial::constant(3, p[2]);
        Polynomial sub = eq3.substitute(2, z_val);
        for (const auto& [m, c] : sub.terms()) {
          Monomial t = m;
          t.e[2] = 0;
          eq2.add_term(t, c);
        }
        if (!eq2.is_zero()) slice.add_patch(eq2);
      }
      if (!slice.patches.empty())
        scene.segments = trace_curve(slice, Vec3{pd[0], pd[1], 0}, 1.5, 3e-3);
    }
    if (res.report.contains("verdict") && res.report["verdict"]["evidence"].contains("sampled_cone")) {
      const auto& dirs = res.report["verdict"]["evidence"]["sampled_cone"];
      if (dirs.contains("directions"))
        for (const auto& d : dirs["directions"])
          scene.rays.push_back(Vec3{d[0].get<double>(), d[1].get<double>(), 0});
    }
    std::ofstream svg(fs::path(dir) / (res.name + ".svg"));
    svg << render_svg(scene);

    if (res.report.contains("multiplicity")) {
      DensityEstimate est;
      const auto& num = res.report["multiplicity"]["numerator"];
      est.radii = num["radii"].get<std::vector<double>>();
      est.measures = num["measures"].get<std::vector<double>>();
      est.ratios = num["ratios"].get<std::vector<double>>();
      std::ofstream csv(fs::path(dir) / (res.name + "_ratios.csv"));
      csv << ratio_csv(est);
    }
  }
}

}  // namespace conelab
