#include "cpc/cli_driver.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cpc/export.hpp"

namespace cpc {

CheckResult polar_spectral_check(const SurfacePatch& sp, int scan, double tol) {
  CheckResult out{"polar_spectral", 0.0, tol, false, ""};
  if (sp.space.flat()) {
    out.pass = true;
    out.note = "skipped: flat space has no polar";
    return out;
  }
  SurfacePatch pol;
  try {
    pol = polar_surface(sp, scan);
  } catch (const VanishingPrincipalCurvature& e) {
    out.pass = true;
    out.note = std::string("skipped: ") + e.what();
    return out;
  }
  GridSpec grid = make_grid(sp, scan, scan);
  const int p = sp.space.p;
  double maxres = 0.0;
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      const double u = grid.u_at(i), v = grid.v_at(j);
      SurfaceJet2 jet = sp.jet(u, v);
      if (!immersion_at(jet, p)) continue;
      auto ne = eval_normal<double>(*sp.kernel, sp.space, u, v);
      PrincipalData base =
          principal_from_forms(forms_from_jet(jet, ne.N, ne.nn > 0 ? 1 : -1, p), sp.declared_r);
      if (!base.diagonalizable) continue;
      PrincipalData dual = principal_curvatures(pol, u, v);
      if (!dual.diagonalizable) continue;
      maxres = std::max(maxres, std::abs(dual.k2 - 1.0 / base.k2));
      maxres = std::max(maxres, std::abs(dual.k1 - 1.0 / base.k1));
    }
  out.max_residual = maxres;
  out.pass = maxres < tol;
  return out;
}

VerifyResult run_verify(const SceneSpec& scene) {
  VerifyResult vr;
  vr.scene_name = scene.name;
  vr.scene_path = scene.path;
  vr.patch = build_scene(scene);
  vr.grid = make_grid(vr.patch, scene.nu, scene.nv);
  if (vr.patch.tube)
    vr.cls = classify_spec(vr.patch.space, vr.patch.tube->eps_p, vr.patch.tube->eps_pp,
                           vr.patch.tube->r);

  vr.pc = constant_pc_verify(vr.patch, vr.grid, scene.tol.kappa, scene.tol.quadric);
  vr.checks = vr.pc.checks;
  const size_t total = size_t(vr.grid.nu) * size_t(vr.grid.nv);
  const size_t unusable = vr.pc.non_immersion_nodes.size() + vr.pc.non_diagonalizable_nodes.size();
  if (unusable == total) {
    vr.checks.push_back({"usable_nodes", double(total), 0.0, false,
                         "no diagonalizable immersion node on the grid"});
    vr.pass = false;
    return vr;
  }

  for (auto& c : geodesic_foliation_check(vr.patch, vr.grid, scene.tol.foliation))
    vr.checks.push_back(c);

  vr.rec = reconstruct_generating_curve(vr.patch, vr.grid);
  vr.checks.push_back({"reconstruction_v_spread", vr.rec->v_spread, scene.tol.reconstruction,
                       vr.rec->v_spread < scene.tol.reconstruction, ""});
  vr.checks.push_back({"reconstruction_norm", vr.rec->norm_residual, scene.tol.reconstruction,
                       vr.rec->norm_residual < scene.tol.reconstruction,
                       "|gamma~|^2 against eps eps' eps'' r^2 c"});
  vr.norm = normalize_generating_curve(vr.rec->gamma_tilde, vr.rec->c, vr.rec->r, vr.patch.space,
                                       vr.rec->eps_p, vr.rec->eps_pp);
  vr.checks.push_back({"reconstruction_home_quadric", vr.norm->max_quadric_residual,
                       scene.tol.reconstruction,
                       vr.norm->max_quadric_residual < scene.tol.reconstruction,
                       "home: " + vr.norm->home_label});

  vr.checks.push_back(polar_spectral_check(vr.patch, 9, scene.tol.polar));
  vr.checks.push_back(
      elliptic_distance_check(vr.patch, make_grid(vr.patch, 17, 17), scene.tol.reconstruction));

  vr.pass = true;
  for (auto& c : vr.checks) vr.pass = vr.pass && c.pass;
  return vr;
}

// ---------------------------------------------------------------------------
// CLI

namespace {

struct CliOptions {
  std::string scene_path, grid, out, chart = "none", format = "obj";
  double tol = -1.0;
};

SceneSpec load_scene(const CliOptions& opt) {
  SceneSpec scene = parse_scene_file(opt.scene_path);
  if (!opt.grid.empty()) {
    auto xpos = opt.grid.find('x');
    if (xpos == std::string::npos)
      throw InvalidScene("--grid expects NUxNV, got '" + opt.grid + "'");
    scene.nu = std::stoi(opt.grid.substr(0, xpos));
    scene.nv = std::stoi(opt.grid.substr(xpos + 1));
  }
  if (opt.tol > 0) scene.tol.kappa = opt.tol;
  validate_scene(scene);
  return scene;
}

std::optional<Classification> classification_of(const SurfacePatch& sp) {
  if (!sp.tube) return std::nullopt;
  return classify_spec(sp.space, sp.tube->eps_p, sp.tube->eps_pp, sp.tube->r);
}

int cmd_build(const CliOptions& opt, std::ostream& out) {
  SceneSpec scene = load_scene(opt);
  SurfacePatch sp = build_scene(scene);
  auto cls = classification_of(sp);
  out << "scene " << scene.name << ": " << sp.label << "\n";
  if (cls)
    out << "  " << format_classification(*cls) << "\n";
  else
    out << "  external patch (no classification)\n";
  std::string dest = opt.out.empty() ? scene.name + ".desc" : opt.out;
  std::ifstream src(opt.scene_path);
  std::ostringstream body;
  body << src.rdbuf();
  std::ofstream d(dest);
  if (!d) throw Error("cannot write descriptor '" + dest + "'");
  d << body.str() << "\n# descriptor written by cpc build\n";
  if (cls) d << "# classification: " << format_classification(*cls) << "\n";
  out << "  descriptor: " << dest << "\n";
  return 0;
}

int cmd_classify(const CliOptions& opt, std::ostream& out) {
  SceneSpec scene = load_scene(opt);
  SurfacePatch sp = build_scene(scene);
  auto cls = classification_of(sp);
  if (cls)
    out << format_classification(*cls) << "\n";
  else
    out << "external patch (no classification)\n";
  return 0;
}

int cmd_verify(const CliOptions& opt, std::ostream& out) {
  SceneSpec scene = load_scene(opt);
  VerifyResult vr = run_verify(scene);
  for (auto& c : vr.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << "  max_residual=" << c.max_residual
        << " tol=" << c.tol;
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << "\n";
  }
  out << (vr.pass ? "VERIFIED" : "VERIFICATION FAILED") << " " << vr.scene_name << "\n";
  if (!opt.out.empty()) {
    std::ofstream rf(opt.out);
    if (!rf) throw Error("cannot write report '" + opt.out + "'");
    write_report(rf, vr);
    out << "report: " << opt.out << "\n";
  }
  return vr.pass ? 0 : 1;
}

int cmd_reconstruct(const CliOptions& opt, std::ostream& out) {
  SceneSpec scene = load_scene(opt);
  SurfacePatch sp = build_scene(scene);
  GridSpec grid = make_grid(sp, scene.nu, scene.nv);
  Reconstruction rec = reconstruct_generating_curve(sp, grid);
  NormalizedCurve nc = normalize_generating_curve(
      rec.gamma_tilde, rec.c, rec.r, sp.space, rec.eps_p, rec.eps_pp);
  std::string dest = opt.out.empty() ? scene.name + ".curve.txt" : opt.out;
  std::ofstream f(dest);
  if (!f) throw Error("cannot write '" + dest + "'");
  f << "# generating curve reconstructed from " << scene.name << "\n";
  f << "# home = " << nc.home_label << "\n";
  f << "# v_spread = " << rec.v_spread << " ; norm_residual = " << rec.norm_residual
    << " ; home_quadric_residual = " << nc.max_quadric_residual << "\n";
  f << "# columns: u x1 x2 x3 x4\n";
  char buf[200];
  for (size_t i = 0; i < nc.points.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g %.17g\n", rec.u[i],
                  nc.points[i][0], nc.points[i][1], nc.points[i][2], nc.points[i][3]);
    f << buf;
  }
  out << "curve home: " << nc.home_label << "\n";
  out << "samples: " << dest << "\n";
  return 0;
}

int cmd_export(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  SceneSpec scene = load_scene(opt);
  SurfacePatch sp = build_scene(scene);
  GridSpec grid = make_grid(sp, scene.nu, scene.nv);
  std::string dest = opt.out.empty() ? scene.name + "." + opt.format : opt.out;
  std::ofstream f(dest);
  if (!f) throw Error("cannot write '" + dest + "'");
  if (opt.format == "obj") {
    Chart chart = chart_from_name(opt.chart, sp.space);
    MeshOutput mesh = build_mesh(sp, grid, chart);
    if (!mesh.warning.empty()) err << "warning: " << mesh.warning << "\n";
    write_obj(f, mesh);
  } else if (opt.format == "csv") {
    write_csv(f, sp, grid);
  } else {
    throw InvalidScene("unknown export format '" + opt.format + "'");
  }
  out << "exported: " << dest << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"constant principal curvature tubes in the six 3D space forms"};
  app.require_subcommand(1);
  CliOptions opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scene", opt.scene_path, "scene or descriptor file")->required();
    sub->add_option("--grid", opt.grid, "evaluation grid, NUxNV");
    sub->add_option("--tol", opt.tol, "override the kappa tolerance");
    sub->add_option("--out", opt.out, "output path");
  };
  add_common(app.add_subcommand("build", "construct the tube and write a descriptor"));
  add_common(app.add_subcommand("classify", "print kind, critical constant and distance"));
  add_common(app.add_subcommand("verify", "run all verification checks"));
  add_common(app.add_subcommand("reconstruct", "recover the generating curve"));
  auto* exp = app.add_subcommand("export", "write an OBJ mesh or CSV table");
  add_common(exp);
  exp->add_option("--chart", opt.chart, "none|poincare|stereographic|flat|raw3");
  exp->add_option("--format", opt.format, "obj|csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (app.got_subcommand("build")) return cmd_build(opt, out);
    if (app.got_subcommand("classify")) return cmd_classify(opt, out);
    if (app.got_subcommand("verify")) return cmd_verify(opt, out);
    if (app.got_subcommand("reconstruct")) return cmd_reconstruct(opt, out);
    if (app.got_subcommand("export")) return cmd_export(opt, out, err);
  } catch (const InvalidScene& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const WrongClassification& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedChart& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace cpc
