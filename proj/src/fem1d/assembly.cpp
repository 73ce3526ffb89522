// SPDX-License-Identifier: Apache-2.0

#include "hamflex/fem1d/assembly.hpp"

namespace hamflex::fem1d {

SpMat assemble_mass(const Space1D& space, double c,
                    const QuadratureRule& rule) {
  const Mesh1D& mesh = space.mesh();
  const double h = mesh.h();
  const int nl = space.dofs_per_element();
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(mesh.n_el * nl * nl));
  std::vector<double> val(static_cast<size_t>(nl));
  for (Index e = 0; e < mesh.n_el; ++e) {
    Matrix local = Matrix::Zero(nl, nl);
    for (int qp = 0; qp < rule.size(); ++qp) {
      const double xi = rule.points[static_cast<size_t>(qp)];
      const double w = rule.weights[static_cast<size_t>(qp)] * h * c;
      for (int l = 0; l < nl; ++l) {
        double v, d1, d2;
        space.eval(l, xi, v, d1, d2);
        val[static_cast<size_t>(l)] = v;
      }
      for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nl; ++j)
          local(i, j) += w * val[static_cast<size_t>(i)] *
                         val[static_cast<size_t>(j)];
    }
    for (int i = 0; i < nl; ++i)
      for (int j = 0; j < nl; ++j) {
        const auto di = space.dof(e, i);
        const auto dj = space.dof(e, j);
        trips.emplace_back(di.global, dj.global,
                           di.scale * dj.scale * local(i, j));
      }
  }
  SpMat out(space.n_dofs(), space.n_dofs());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

BlockDiagMatrix assemble_dg_mass(const Space1D& dg, double c,
                                 const QuadratureRule& rule) {
  const Mesh1D& mesh = dg.mesh();
  const double h = mesh.h();
  const int nl = dg.dofs_per_element();
  std::vector<Matrix> blocks(static_cast<size_t>(mesh.n_el));
  std::vector<double> val(static_cast<size_t>(nl));
  for (Index e = 0; e < mesh.n_el; ++e) {
    Matrix local = Matrix::Zero(nl, nl);
    for (int qp = 0; qp < rule.size(); ++qp) {
      const double xi = rule.points[static_cast<size_t>(qp)];
      const double w = rule.weights[static_cast<size_t>(qp)] * h * c;
      for (int l = 0; l < nl; ++l) {
        double v, d1, d2;
        dg.eval(l, xi, v, d1, d2);
        val[static_cast<size_t>(l)] = v;
      }
      for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nl; ++j)
          local(i, j) += w * val[static_cast<size_t>(i)] *
                         val[static_cast<size_t>(j)];
    }
    blocks[static_cast<size_t>(e)] = local;
  }
  return BlockDiagMatrix(std::move(blocks));
}

SpMat assemble_coupling_1d(const Space1D& stress, const Space1D& velocity,
                           int deriv_order, const QuadratureRule& rule,
                           const Coefficient& weight) {
  const Mesh1D& mesh = stress.mesh();
  const double h = mesh.h();
  const int ns = stress.dofs_per_element();
  const int nv = velocity.dofs_per_element();
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(mesh.n_el * ns * nv));
  std::vector<double> psi(static_cast<size_t>(ns));
  std::vector<double> dphi(static_cast<size_t>(nv));
  const double inv_h = 1.0 / h;
  const double deriv_scale = deriv_order == 1 ? inv_h : inv_h * inv_h;
  for (Index e = 0; e < mesh.n_el; ++e) {
    Matrix local = Matrix::Zero(ns, nv);
    for (int qp = 0; qp < rule.size(); ++qp) {
      const double xi = rule.points[static_cast<size_t>(qp)];
      double w = rule.weights[static_cast<size_t>(qp)] * h;
      if (weight) w *= weight(e, xi);
      for (int l = 0; l < ns; ++l) {
        double v, d1, d2;
        stress.eval(l, xi, v, d1, d2);
        psi[static_cast<size_t>(l)] = v;
      }
      for (int l = 0; l < nv; ++l) {
        double v, d1, d2;
        velocity.eval(l, xi, v, d1, d2);
        dphi[static_cast<size_t>(l)] = (deriv_order == 1 ? d1 : d2) * deriv_scale;
      }
      for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nv; ++j)
          local(i, j) += w * psi[static_cast<size_t>(i)] *
                         dphi[static_cast<size_t>(j)];
    }
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < nv; ++j) {
        const auto di = stress.dof(e, i);
        const auto dj = velocity.dof(e, j);
        trips.emplace_back(di.global, dj.global,
                           di.scale * dj.scale * local(i, j));
      }
  }
  SpMat out(stress.n_dofs(), velocity.n_dofs());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

Vector assemble_load(const Space1D& stress, const QuadratureRule& rule,
                     const Coefficient& f) {
  const Mesh1D& mesh = stress.mesh();
  const double h = mesh.h();
  const int ns = stress.dofs_per_element();
  Vector out = Vector::Zero(stress.n_dofs());
  for (Index e = 0; e < mesh.n_el; ++e) {
    for (int qp = 0; qp < rule.size(); ++qp) {
      const double xi = rule.points[static_cast<size_t>(qp)];
      const double w = rule.weights[static_cast<size_t>(qp)] * h * f(e, xi);
      for (int i = 0; i < ns; ++i) {
        double v, d1, d2;
        stress.eval(i, xi, v, d1, d2);
        const auto di = stress.dof(e, i);
        out[di.global] += w * v * di.scale;
      }
    }
  }
  return out;
}

SpMat assemble_weighted_stiffness(const Space1D& space,
                                  const QuadratureRule& rule,
                                  const Coefficient& w) {
  const Mesh1D& mesh = space.mesh();
  const double h = mesh.h();
  const int nl = space.dofs_per_element();
  const double inv_h = 1.0 / h;
  std::vector<Triplet> trips;
  std::vector<double> dphi(static_cast<size_t>(nl));
  for (Index e = 0; e < mesh.n_el; ++e) {
    Matrix local = Matrix::Zero(nl, nl);
    for (int qp = 0; qp < rule.size(); ++qp) {
      const double xi = rule.points[static_cast<size_t>(qp)];
      const double wq = rule.weights[static_cast<size_t>(qp)] * h * w(e, xi);
      for (int l = 0; l < nl; ++l) {
        double v, d1, d2;
        space.eval(l, xi, v, d1, d2);
        dphi[static_cast<size_t>(l)] = d1 * inv_h;
      }
      for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nl; ++j)
          local(i, j) += wq * dphi[static_cast<size_t>(i)] *
                         dphi[static_cast<size_t>(j)];
    }
    for (int i = 0; i < nl; ++i)
      for (int j = 0; j < nl; ++j) {
        const auto di = space.dof(e, i);
        const auto dj = space.dof(e, j);
        trips.emplace_back(di.global, dj.global,
                           di.scale * dj.scale * local(i, j));
      }
  }
  SpMat out(space.n_dofs(), space.n_dofs());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

} // namespace hamflex::fem1d
