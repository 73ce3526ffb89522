// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_SOLVERS_CG_HPP
#define HAMFLEX_SOLVERS_CG_HPP

#include <functional>

#include "hamflex/types.hpp"

namespace hamflex::solvers {

using LinearOperator = std::function<void(const Vector&, Vector&)>;

struct CgResult {
  Vector x;
  int iterations = 0;
  double residual = 0.0; // ||A x - b|| / ||b||
};

/// Preconditioned conjugate gradient on an SPD operator. Stops when
/// ||A x - b|| <= tol ||b||. Throws IterationBudgetError when max_iter
/// is exhausted and NumericalError when a nonpositive curvature
/// p^T A p exposes an indefinite operator.
CgResult solve_cg(const LinearOperator& a, const LinearOperator& precond,
                  const Vector& rhs, double tol, int max_iter);

/// Unpreconditioned convenience overload.
CgResult solve_cg(const LinearOperator& a, const Vector& rhs, double tol,
                  int max_iter);

} // namespace hamflex::solvers

#endif
