#include "cpc/export.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace cpc {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

Chart default_chart(const SpaceForm& space) {
  if (space.flat()) return Chart::FlatSlice;
  if (space == SpaceForm{1, -1}) return Chart::Poincare;
  if (space == SpaceForm{0, 1}) return Chart::Stereographic;
  return Chart::Raw3;
}

Chart chart_from_name(const std::string& name, const SpaceForm& space) {
  if (name.empty() || name == "none") return default_chart(space);
  if (name == "poincare") {
    if (!(space == SpaceForm{1, -1}))
      throw UnsupportedChart("poincare chart requires h3, got " + space.name());
    return Chart::Poincare;
  }
  if (name == "stereographic") {
    if (!(space == SpaceForm{0, 1}))
      throw UnsupportedChart("stereographic chart requires s3, got " + space.name());
    return Chart::Stereographic;
  }
  if (name == "flat") {
    if (!space.flat()) throw UnsupportedChart("flat chart requires e3 or l3");
    return Chart::FlatSlice;
  }
  if (name == "raw3") return Chart::Raw3;
  throw UnsupportedChart("unknown chart '" + name + "'");
}

Eigen::Vector3d apply_chart(Chart chart, const SpaceForm& space, const Vec4d& x) {
  switch (chart) {
    case Chart::Poincare: {
      if (1.0 + x[0] < 1e-9)
        throw NumericalBreakdown("poincare chart is singular at x1 = -1");
      return Eigen::Vector3d(x[1], x[2], x[3]) / (1.0 + x[0]);
    }
    case Chart::Stereographic: {
      if (1.0 + x[0] < 1e-9)
        throw NumericalBreakdown("stereographic chart is singular at the pole");
      return Eigen::Vector3d(x[1], x[2], x[3]) / (1.0 + x[0]);
    }
    case Chart::FlatSlice:
      return Eigen::Vector3d(x[0], x[1], x[2]);
    case Chart::Raw3:
    default:
      (void)space;
      return Eigen::Vector3d(x[0], x[1], x[2]);
  }
}

MeshOutput build_mesh(const SurfacePatch& sp, const GridSpec& grid, Chart chart) {
  MeshOutput mesh;
  if (chart == Chart::Raw3 && !sp.space.flat())
    mesh.warning = "raw3 chart drops x4; the projection is not isometric for " + sp.space.name();
  const int p = sp.space.p;
  mesh.vertices4.reserve(size_t(grid.nu) * grid.nv);
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      const double u = grid.u_at(i), v = grid.v_at(j);
      SurfaceJet2 jet = sp.jet(u, v);
      mesh.vertices4.push_back(jet.phi);
      mesh.vertices3.push_back(apply_chart(chart, sp.space, jet.phi));
      double k1 = std::nan(""), k2 = std::nan("");
      std::uint8_t umb = 0;
      if (immersion_at(jet, p)) {
        auto ne = eval_normal<double>(*sp.kernel, sp.space, u, v);
        FundamentalForms ff = forms_from_jet(jet, ne.N, ne.nn > 0 ? 1 : -1, p);
        PrincipalData pd = principal_from_forms(ff, sp.declared_r);
        if (pd.diagonalizable) {
          k1 = pd.k1;
          k2 = pd.k2;
          umb = pd.umbilic ? 1 : 0;
        }
      }
      mesh.k1.push_back(k1);
      mesh.k2.push_back(k2);
      mesh.umbilic.push_back(umb);
    }

  auto vid = [&](int i, int j) { return i * grid.nv + (j % grid.nv); };
  const int jmax = grid.v_periodic ? grid.nv : grid.nv - 1;
  for (int i = 0; i + 1 < grid.nu; ++i)
    for (int j = 0; j < jmax; ++j)
      mesh.quads.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
  return mesh;
}

void write_obj(std::ostream& os, const MeshOutput& mesh) {
  if (!mesh.warning.empty()) os << "# warning: " << mesh.warning << "\n";
  for (auto& v : mesh.vertices3)
    os << "v " << fmt17(v[0]) << " " << fmt17(v[1]) << " " << fmt17(v[2]) << "\n";
  for (auto& q : mesh.quads)
    os << "f " << q[0] + 1 << " " << q[1] + 1 << " " << q[2] + 1 << " " << q[3] + 1 << "\n";
}

void write_csv(std::ostream& os, const SurfacePatch& sp, const GridSpec& grid) {
  MeshOutput mesh = build_mesh(sp, grid, Chart::Raw3);
  os << "u,v,x1,x2,x3,x4,k1,k2,umbilic\n";
  size_t idx = 0;
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j, ++idx) {
      const Vec4d& x = mesh.vertices4[idx];
      os << fmt17(grid.u_at(i)) << "," << fmt17(grid.v_at(j));
      for (int c = 0; c < 4; ++c) os << "," << fmt17(x[c]);
      os << "," << fmt17(mesh.k1[idx]) << "," << fmt17(mesh.k2[idx]) << ","
         << int(mesh.umbilic[idx]) << "\n";
    }
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw Error("empty CSV");
  std::stringstream hs(line);
  std::string col;
  while (std::getline(hs, col, ',')) t.columns.push_back(col);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::vector<double> row;
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != t.columns.size()) throw Error("ragged CSV row");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace cpc
