// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_FEM1D_SPACE_HPP
#define HAMFLEX_FEM1D_SPACE_HPP

#include <functional>

#include "hamflex/types.hpp"

namespace hamflex::fem1d {

/// Uniform 1D mesh on [0, length].
struct Mesh1D {
  Index n_el = 0;
  double length = 0.0;

  double h() const { return length / static_cast<double>(n_el); }
  double node(Index i) const { return static_cast<double>(i) * h(); }
  double point(Index e, double xi) const { return node(e) + xi * h(); }
};

/// Scalar finite element space on a Mesh1D.
///
/// CG_k:    continuous Lagrange of degree k, equispaced nodes.
/// Hermite: C^1 cubics, two dofs per mesh node (value, slope); the
///          element-local slope dofs carry a factor h so the reference
///          shape functions live on [0, 1].
/// DG_k:    discontinuous Legendre polynomials per element; L2
///          orthogonal, so compliance mass blocks are diagonal.
class Space1D {
public:
  enum class Kind { CG, Hermite, DG };

  Space1D(Kind kind, int order, const Mesh1D& mesh);

  Kind kind() const { return kind_; }
  int order() const { return order_; }
  const Mesh1D& mesh() const { return mesh_; }
  Index n_dofs() const { return n_dofs_; }
  int dofs_per_element() const { return n_local_; }

  struct LocalDof {
    Index global;
    double scale; // local = scale * global (h on Hermite slope dofs)
  };
  LocalDof dof(Index element, int local) const;

  /// Reference basis values at xi in [0, 1]: value, d/dxi, d2/dxi2.
  void eval(int local, double xi, double& value, double& d1, double& d2) const;

  /// Value / x-derivatives of a dof vector at (element, xi).
  double value(const Vector& dofs, Index e, double xi) const;
  double deriv(const Vector& dofs, Index e, double xi) const;
  double deriv2(const Vector& dofs, Index e, double xi) const;

  /// Nodal interpolation of f (CG: values; Hermite: needs df too).
  Vector interpolate(const std::function<double(double)>& f,
                     const std::function<double(double)>& df = {}) const;

private:
  Kind kind_;
  int order_;
  Mesh1D mesh_;
  int n_local_ = 0;
  Index n_dofs_ = 0;
};

} // namespace hamflex::fem1d

#endif
