// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_FEM3D_VTK_HPP
#define HAMFLEX_FEM3D_VTK_HPP

#include <string>

#include "hamflex/fem3d/tet_mesh.hpp"

namespace hamflex::fem3d {

/// Optional fields for a VTK snapshot. The displacement covers the
/// full vertex set (3 per vertex); the cell scalar is typically the
/// Frobenius norm of the stress.
struct VtkFields {
  const Vector* point_displacement = nullptr;
  const Vector* cell_scalar = nullptr;
  std::string scalar_name = "stress_frobenius";
};

/// Legacy ASCII VTK 3.0 unstructured-grid file; floats written with 17
/// significant digits so values round-trip exactly.
void export_vtk(const TetMesh& mesh, const VtkFields& fields,
                const std::string& path);

} // namespace hamflex::fem3d

#endif
