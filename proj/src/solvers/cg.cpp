// SPDX-License-Identifier: Apache-2.0

#include "hamflex/solvers/cg.hpp"

#include <cmath>

#include "hamflex/error.hpp"

namespace hamflex::solvers {

CgResult solve_cg(const LinearOperator& a, const LinearOperator& precond,
                  const Vector& rhs, double tol, int max_iter) {
  const Index n = rhs.size();
  CgResult result;
  result.x = Vector::Zero(n);

  const double norm_b = rhs.norm();
  if (norm_b == 0.0) {
    result.residual = 0.0;
    return result;
  }

  Vector r = rhs; // r = b - A*0
  Vector z(n);
  precond(r, z);
  Vector p = z;
  Vector ap(n);
  double rz = r.dot(z);

  for (int it = 1; it <= max_iter; ++it) {
    a(p, ap);
    const double curvature = p.dot(ap);
    if (!(curvature > 0.0))
      throw NumericalError(
          "solve_cg: nonpositive curvature p^T A p = " +
          std::to_string(curvature) + " at iteration " + std::to_string(it) +
          "; operator is not positive definite");
    const double alpha = rz / curvature;
    result.x += alpha * p;
    r -= alpha * ap;
    result.iterations = it;
    const double rel = r.norm() / norm_b;
    if (rel <= tol) {
      result.residual = rel;
      return result;
    }
    precond(r, z);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  throw IterationBudgetError(max_iter, r.norm() / norm_b,
                             "solve_cg: no convergence within " +
                                 std::to_string(max_iter) +
                                 " iterations, relative residual " +
                                 std::to_string(r.norm() / norm_b));
}

CgResult solve_cg(const LinearOperator& a, const Vector& rhs, double tol,
                  int max_iter) {
  return solve_cg(
      a, [](const Vector& in, Vector& out) { out = in; }, rhs, tol, max_iter);
}

} // namespace hamflex::solvers
