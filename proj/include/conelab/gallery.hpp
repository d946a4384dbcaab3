#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conelab/report.hpp"

namespace conelab {

// One corpus entry: a defining expression (possibly several constrained
// patches), the analyzed point, and the expected outcomes with provenance
// tags.
struct GalleryEntry {
  std::string name;
  struct PatchDef {
    std::string equation;
    std::vector<std::string> constraints;
  };
  std::vector<PatchDef> patches;
  std::vector<std::string> point;  // exact coordinates
  std::string source;              // example tag

  std::string expected_class;  // empty = no classification check
  std::optional<double> expected_multiplicity;  // +-5%
  std::optional<double> expected_density;       // +-5%
  std::optional<double> expected_hoelder;       // +-10%
  bool expect_conical_closure = false;
  std::optional<bool> expect_entire_graph;      // direction (0,1) when true
  std::optional<bool> expect_symmetric_cone;
  std::optional<Box> sample_region;  // e.g. restricted to one branch
};

const std::vector<GalleryEntry>& gallery_corpus();

Variety entry_variety(const GalleryEntry& e);
std::vector<Rational> entry_point(const GalleryEntry& e);

struct GalleryOptions {
  std::uint64_t seed = 42;
  int samples = 512;
  double tolerance = 1e-2;
  double resolution = 2e-3;
  std::string filter;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct EntryResult {
  std::string name;
  std::string source;
  std::vector<CheckResult> checks;
  Json report;
  double seconds = 0;  // diagnostic only; never serialized
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct GalleryResult {
  std::vector<EntryResult> entries;
  bool all_pass = true;
};

GalleryResult run_gallery(const GalleryOptions& opt);

// Deterministic report: timings excluded so identical (corpus, seed,
// options, version) runs serialize byte-identically.
Json gallery_json(const GalleryResult& result, const GalleryOptions& opt);

// SVG per entry plus ratio-table CSVs, written under dir.
void emit_plot_data(const GalleryResult& result, const GalleryOptions& opt,
                    const std::string& dir);

extern const char* kToolVersion;

}  // namespace conelab
