#include <cstdio>
#include <ostream>

#include "cpc/cli_driver.hpp"

namespace cpc {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_loci(std::ostream& os, const char* key,
                const std::vector<std::pair<int, int>>& nodes) {
  os << "    " << key << " = [";
  for (size_t k = 0; k < nodes.size(); ++k)
    os << (k ? ", " : " ") << nodes[k].first << ":" << nodes[k].second;
  os << (nodes.empty() ? "]\n" : " ]\n");
}

}  // namespace

std::string format_classification(const Classification& cls) {
  std::string s = to_string(cls.kind) + ", c = " + fmt(cls.c);
  if (cls.d)
    s += ", d = " + fmt(*cls.d);
  else
    s += ", d undefined";
  s += ", generating curve in " + cls.curve_home + " (row " + std::to_string(cls.row_id) + ")";
  return s;
}

void write_report(std::ostream& os, const VerifyResult& vr) {
  os << "report {\n";
  os << "  scene = " << vr.scene_name << "\n";
  os << "  source = " << vr.scene_path << "\n";
  os << "  space = " << vr.patch.space.name() << "\n";
  os << "  label = " << vr.patch.label << "\n";
  os << "  grid { nu = " << vr.grid.nu << " ; nv = " << vr.grid.nv
     << " ; u0 = " << fmt(vr.grid.rect.u.a) << " ; u1 = " << fmt(vr.grid.rect.u.b)
     << " ; v0 = " << fmt(vr.grid.rect.v.a) << " ; v1 = " << fmt(vr.grid.rect.v.b)
     << " ; v_periodic = " << (vr.grid.v_periodic ? "true" : "false") << " }\n";
  if (vr.cls) {
    os << "  classification { kind = " << to_string(vr.cls->kind) << " ; c = " << fmt(vr.cls->c);
    if (vr.cls->d) os << " ; d = " << fmt(*vr.cls->d);
    os << " ; row = " << vr.cls->row_id << " ; curve_home = " << vr.cls->curve_home << " }\n";
  }
  for (auto& c : vr.checks) {
    os << "  check { name = " << c.name << " ; max_residual = " << fmt(c.max_residual)
       << " ; tol = " << fmt(c.tol) << " ; pass = " << (c.pass ? "true" : "false");
    if (!c.note.empty()) os << " ; note = \"" << c.note << "\"";
    os << " }\n";
  }
  if (vr.rec) {
    os << "  reconstruction { v_spread = " << fmt(vr.rec->v_spread)
       << " ; norm_residual = " << fmt(vr.rec->norm_residual)
       << " ; expected_norm2 = " << fmt(vr.rec->expected_norm2);
    if (vr.norm)
      os << " ; home = " << vr.norm->home_label
         << " ; home_quadric_residual = " << fmt(vr.norm->max_quadric_residual);
    os << " }\n";
  }
  os << "  loci {\n";
  write_loci(os, "umbilic", vr.pc.umbilic_nodes);
  write_loci(os, "non_immersion", vr.pc.non_immersion_nodes);
  write_loci(os, "non_diagonalizable", vr.pc.non_diagonalizable_nodes);
  os << "  }\n";
  os << "  pass = " << (vr.pass ? "true" : "false") << "\n";
  os << "}\n";
}

}  // namespace cpc
