// SPDX-License-Identifier: Apache-2.0

#include "hamflex/fem3d/vtk.hpp"

#include <cinttypes>
#include <cstdio>
#include <memory>

#include "hamflex/error.hpp"

namespace hamflex::fem3d {

void export_vtk(const TetMesh& mesh, const VtkFields& fields,
                const std::string& path) {
  if (fields.point_displacement &&
      fields.point_displacement->size() != 3 * mesh.n_vertices())
    throw ConfigError("export_vtk: displacement size mismatch");
  if (fields.cell_scalar && fields.cell_scalar->size() != mesh.n_cells())
    throw ConfigError("export_vtk: cell scalar size mismatch");

  std::unique_ptr<std::FILE, int (*)(std::FILE*)> file(
      std::fopen(path.c_str(), "w"), &std::fclose);
  if (!file) throw FileError("export_vtk: cannot open '" + path + "'");
  std::FILE* f = file.get();

  std::fprintf(f, "# vtk DataFile Version 3.0\n");
  std::fprintf(f, "hamflex snapshot\n");
  std::fprintf(f, "ASCII\n");
  std::fprintf(f, "DATASET UNSTRUCTURED_GRID\n");
  std::fprintf(f, "POINTS %" PRId64 " double\n",
               static_cast<std::int64_t>(mesh.n_vertices()));
  for (const Vector3& p : mesh.vertices)
    std::fprintf(f, "%.17g %.17g %.17g\n", p[0], p[1], p[2]);

  std::fprintf(f, "CELLS %" PRId64 " %" PRId64 "\n",
               static_cast<std::int64_t>(mesh.n_cells()),
               static_cast<std::int64_t>(5 * mesh.n_cells()));
  for (const auto& t : mesh.tets)
    std::fprintf(f, "4 %" PRId64 " %" PRId64 " %" PRId64 " %" PRId64 "\n",
                 static_cast<std::int64_t>(t[0]),
                 static_cast<std::int64_t>(t[1]),
                 static_cast<std::int64_t>(t[2]),
                 static_cast<std::int64_t>(t[3]));

  std::fprintf(f, "CELL_TYPES %" PRId64 "\n",
               static_cast<std::int64_t>(mesh.n_cells()));
  for (Index c = 0; c < mesh.n_cells(); ++c) std::fprintf(f, "10\n");

  if (fields.point_displacement) {
    const Vector& u = *fields.point_displacement;
    std::fprintf(f, "POINT_DATA %" PRId64 "\n",
                 static_cast<std::int64_t>(mesh.n_vertices()));
    std::fprintf(f, "VECTORS displacement double\n");
    for (Index v = 0; v < mesh.n_vertices(); ++v)
      std::fprintf(f, "%.17g %.17g %.17g\n", u[3 * v], u[3 * v + 1],
                   u[3 * v + 2]);
  }

  if (fields.cell_scalar) {
    std::fprintf(f, "CELL_DATA %" PRId64 "\n",
                 static_cast<std::int64_t>(mesh.n_cells()));
    std::fprintf(f, "SCALARS %s double 1\n", fields.scalar_name.c_str());
    std::fprintf(f, "LOOKUP_TABLE default\n");
    for (Index c = 0; c < mesh.n_cells(); ++c)
      std::fprintf(f, "%.17g\n", (*fields.cell_scalar)[c]);
  }

  if (std::ferror(f)) throw FileError("export_vtk: write failed for '" + path + "'");
}

} // namespace hamflex::fem3d
