#pragma once

// Scene files: a small nested key-value format describing a space form, a
// tube kind or example family, the generating data, grid, tolerances and
// output paths.  One committed scene exists per row of the classification
// table; see README for the format.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cpc/examples.hpp"
#include "cpc/tubes.hpp"

namespace cpc {

struct KV {
  std::map<std::string, std::string> values;
  std::map<std::string, std::vector<double>> arrays;
  std::map<std::string, std::shared_ptr<KV>> children;

  bool has(const std::string& k) const {
    return values.count(k) || arrays.count(k) || children.count(k);
  }
  const KV* child(const std::string& k) const {
    auto it = children.find(k);
    return it == children.end() ? nullptr : it->second.get();
  }
  std::string str(const std::string& k, const std::string& fallback = "") const;
  double num(const std::string& k, std::optional<double> fallback = std::nullopt) const;
  int integer(const std::string& k, std::optional<int> fallback = std::nullopt) const;
};

KV parse_kv_text(const std::string& text, const std::string& origin = "<text>");
KV parse_kv_file(const std::string& path);

struct SceneTols {
  double kappa = 1e-8;
  double quadric = 1e-10;
  double foliation = 1e-8;
  double reconstruction = 1e-8;
  double polar = 1e-7;
};

struct SceneSpec {
  std::string name;
  std::string path;
  SpaceForm space;
  std::string kind;  // elliptic | hyperbolic | parabolic | example | external
  double r = 1.0;
  int eps_p = 1, eps_pp = 1;
  std::optional<Interval> u_domain, v_domain;
  int nu = 64, nv = 64;
  SceneTols tol;
  KV raw;  // curve / example / external blocks

  bool is_tube_kind() const {
    return kind == "elliptic" || kind == "hyperbolic" || kind == "parabolic";
  }
};

SceneSpec parse_scene_text(const std::string& text, const std::string& origin = "<text>");
SceneSpec parse_scene_file(const std::string& path);

// validates sign admissibility (tube kinds) against the classification table;
// throws InvalidScene / WrongClassification with the offending row cited
void validate_scene(const SceneSpec& scene);

Profile profile_from_kv(const KV& kv);

// builds the patch described by the scene (generator families, example
// families or external test patches)
SurfacePatch build_scene(const SceneSpec& scene);

}  // namespace cpc
