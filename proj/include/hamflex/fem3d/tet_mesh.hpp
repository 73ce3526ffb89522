// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_FEM3D_TET_MESH_HPP
#define HAMFLEX_FEM3D_TET_MESH_HPP

#include <array>
#include <vector>

#include "hamflex/types.hpp"

namespace hamflex::fem3d {

/// Conforming tetrahedral mesh of a box, six tets per cube around the
/// main diagonal (Kuhn subdivision) with a fixed vertex-ordering rule
/// so meshes are reproducible bit for bit.
struct TetMesh {
  std::vector<Vector3> vertices;
  std::vector<std::array<Index, 4>> tets;
  std::vector<Index> base_vertices; // z = 0 plane
  double lx = 0.0, ly = 0.0, lz = 0.0;

  Index n_vertices() const { return static_cast<Index>(vertices.size()); }
  Index n_cells() const { return static_cast<Index>(tets.size()); }
  double volume() const;
};

TetMesh build_box_mesh(Index nx, Index ny, Index nz, double lx, double ly,
                       double lz);

} // namespace hamflex::fem3d

#endif
