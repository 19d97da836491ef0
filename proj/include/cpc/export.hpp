#pragma once

// Mesh and table export: OBJ meshes through a 3D chart projection, CSV tables
// with the raw 4D coordinates and per-node curvature scalars.

#include <iosfwd>
#include <string>
#include <vector>

#include "cpc/geometry.hpp"
#include "cpc/patch.hpp"

namespace cpc {

enum class Chart { Poincare, Stereographic, FlatSlice, Raw3 };

Chart default_chart(const SpaceForm& space);
Chart chart_from_name(const std::string& name, const SpaceForm& space);
Eigen::Vector3d apply_chart(Chart chart, const SpaceForm& space, const Vec4d& x);

struct MeshOutput {
  std::vector<Vec4d> vertices4;
  std::vector<Eigen::Vector3d> vertices3;        // chart projection
  std::vector<std::array<int, 4>> quads;         // zero-based vertex indices
  std::vector<double> k1, k2;                    // per-vertex scalars (NaN if undefined)
  std::vector<std::uint8_t> umbilic;
  std::string warning;                           // set for non-isometric charts
};

MeshOutput build_mesh(const SurfacePatch& sp, const GridSpec& grid, Chart chart);

void write_obj(std::ostream& os, const MeshOutput& mesh);
void write_csv(std::ostream& os, const SurfacePatch& sp, const GridSpec& grid);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(std::istream& is);

}  // namespace cpc
