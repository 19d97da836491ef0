#pragma once

// Drivers behind the CLI subcommands; exposed as functions so tests can run
// them in-process.  Exit-status contract: 0 pass, 1 verification failure,
// 2 invalid scene, 3 numerical breakdown.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpc/geometry.hpp"
#include "cpc/scene.hpp"
#include "cpc/tubes.hpp"

namespace cpc {

struct VerifyResult {
  std::string scene_name, scene_path;
  SurfacePatch patch;
  std::optional<Classification> cls;
  GridSpec grid;
  CurvatureReport pc;
  std::vector<CheckResult> checks;  // every check, in report order
  std::optional<Reconstruction> rec;
  std::optional<NormalizedCurve> norm;
  bool pass = false;
};

CheckResult polar_spectral_check(const SurfacePatch& sp, int scan = 9, double tol = 1e-7);

VerifyResult run_verify(const SceneSpec& scene);

void write_report(std::ostream& os, const VerifyResult& vr);

std::string format_classification(const Classification& cls);

// argv-style entry point used by tools/main.cpp and the in-process CLI tests
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cpc
