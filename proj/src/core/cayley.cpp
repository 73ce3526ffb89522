// SPDX-License-Identifier: Apache-2.0

#include "hamflex/core/cayley.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "hamflex/error.hpp"

namespace hamflex {

Matrix cayley_transition(const Matrix& h, const Matrix& j, double dt) {
  if (h.rows() != h.cols() || j.rows() != j.cols() || h.rows() != j.rows())
    throw ConfigError("cayley_transition: dimension mismatch");
  if (dt <= 0.0) throw ConfigError("cayley_transition: dt must be positive");
  const Matrix minus = h - 0.5 * dt * j;
  const Matrix plus = h + 0.5 * dt * j;
  Eigen::PartialPivLU<Matrix> lu(minus);
  // H - (dt/2)J is invertible for SPD H and skew J; a singular LU here
  // is a genuine numerical failure.
  const Matrix result = lu.solve(plus);
  if (!result.allFinite())
    throw NumericalError("cayley_transition: singular factorization");
  return result;
}

std::vector<std::complex<double>> cayley_spectrum(const Matrix& h,
                                                  const Matrix& j, double dt) {
  const Matrix transition = cayley_transition(h, j, dt);
  Eigen::EigenSolver<Matrix> solver(transition, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("cayley_spectrum: eigenvalue iteration failed");
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<size_t>(transition.rows()));
  for (Index i = 0; i < transition.rows(); ++i)
    out.push_back(solver.eigenvalues()[i]);
  return out;
}

std::vector<std::complex<double>> cayley_spectrum(const BlockMass& mass,
                                                  const Matrix& j, double dt) {
  return cayley_spectrum(mass.dense(), j, dt);
}

Matrix dense_j(const Model& model, const Vector& q) {
  const Index nv = model.velocity_dim();
  const Index ns = model.stress_dim();
  const Matrix l(model.assemble_coupling(q));
  Matrix j = Matrix::Zero(nv + ns, nv + ns);
  j.topRightCorner(nv, ns) = -l.transpose();
  j.bottomLeftCorner(ns, nv) = l;
  return j;
}

} // namespace hamflex
