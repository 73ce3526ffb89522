// SPDX-License-Identifier: Apache-2.0

#include "hamflex/fem3d/tet_mesh.hpp"

#include <algorithm>
#include <cmath>

#include "hamflex/error.hpp"

namespace hamflex::fem3d {

namespace {
double tet_volume(const Vector3& a, const Vector3& b, const Vector3& c,
                  const Vector3& d) {
  return (b - a).cross(c - a).dot(d - a) / 6.0;
}
} // namespace

double TetMesh::volume() const {
  double total = 0.0;
  for (const auto& t : tets)
    total += tet_volume(vertices[static_cast<size_t>(t[0])],
                        vertices[static_cast<size_t>(t[1])],
                        vertices[static_cast<size_t>(t[2])],
                        vertices[static_cast<size_t>(t[3])]);
  return total;
}

TetMesh build_box_mesh(Index nx, Index ny, Index nz, double lx, double ly,
                       double lz) {
  if (nx < 1 || ny < 1 || nz < 1)
    throw ConfigError("build_box_mesh: cell counts must be positive");
  if (!(lx > 0.0) || !(ly > 0.0) || !(lz > 0.0))
    throw ConfigError("build_box_mesh: box lengths must be positive");

  TetMesh mesh;
  mesh.lx = lx;
  mesh.ly = ly;
  mesh.lz = lz;
  mesh.vertices.reserve(
      static_cast<size_t>((nx + 1) * (ny + 1) * (nz + 1)));
  const double hx = lx / static_cast<double>(nx);
  const double hy = ly / static_cast<double>(ny);
  const double hz = lz / static_cast<double>(nz);
  for (Index k = 0; k <= nz; ++k)
    for (Index j = 0; j <= ny; ++j)
      for (Index i = 0; i <= nx; ++i)
        mesh.vertices.emplace_back(i * hx, j * hy, k * hz);

  auto vid = [&](Index i, Index j, Index k) {
    return i + (nx + 1) * (j + (ny + 1) * k);
  };

  // Six lattice paths from corner (0,0,0) to (1,1,1); all cubes use the
  // same subdivision, which keeps shared faces conforming.
  static const int paths[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

  mesh.tets.reserve(static_cast<size_t>(6 * nx * ny * nz));
  for (Index k = 0; k < nz; ++k)
    for (Index j = 0; j < ny; ++j)
      for (Index i = 0; i < nx; ++i) {
        for (const auto& path : paths) {
          Index corner[3] = {0, 0, 0};
          std::array<Index, 4> tet;
          tet[0] = vid(i, j, k);
          for (int step = 0; step < 3; ++step) {
            corner[path[step]] = 1;
            tet[static_cast<size_t>(step + 1)] =
                vid(i + corner[0], j + corner[1], k + corner[2]);
          }
          const double vol =
              tet_volume(mesh.vertices[static_cast<size_t>(tet[0])],
                         mesh.vertices[static_cast<size_t>(tet[1])],
                         mesh.vertices[static_cast<size_t>(tet[2])],
                         mesh.vertices[static_cast<size_t>(tet[3])]);
          if (vol < 0.0) std::swap(tet[2], tet[3]);
          if (vol == 0.0)
            throw MeshError("build_box_mesh: degenerate tetrahedron");
          mesh.tets.push_back(tet);
        }
      }

  for (Index j = 0; j <= ny; ++j)
    for (Index i = 0; i <= nx; ++i) mesh.base_vertices.push_back(vid(i, j, 0));

  return mesh;
}

} // namespace hamflex::fem3d
