// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_SOLVERS_SPD_HPP
#define HAMFLEX_SOLVERS_SPD_HPP

#include <memory>

#include "hamflex/types.hpp"

namespace hamflex::solvers {

/// Direct factorization of a sparse symmetric positive definite
/// matrix, reusable for repeated solves. The symbolic analysis can be
/// recycled across matrices with an identical sparsity pattern via
/// refactorize(), which is what the time loop does when the condensed
/// operator changes values but not structure.
class SpdFactorization {
public:
  SpdFactorization();
  ~SpdFactorization();
  SpdFactorization(SpdFactorization&&) noexcept;
  SpdFactorization& operator=(SpdFactorization&&) noexcept;

  /// block_size > 1 selects the blocked Cholesky backend for matrices
  /// with a uniform dof-block structure (vector-valued P1 spaces).
  explicit SpdFactorization(const SpMat& a, int block_size = 1);

  /// Factor a matrix with the same pattern as the previous one.
  void refactorize(const SpMat& a);

  Vector solve(const Vector& rhs) const;
  Index dim() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Checks symmetry and positive definiteness; throws ConfigError for a
/// non-symmetric input and NotPositiveDefinite (naming the pivot) for
/// an indefinite one.
SpdFactorization factor_spd(const SpMat& a, int block_size = 1);

} // namespace hamflex::solvers

#endif
