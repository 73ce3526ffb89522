// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_SOLVERS_BLOCK_CHOLESKY_HPP
#define HAMFLEX_SOLVERS_BLOCK_CHOLESKY_HPP

#include <vector>

#include "hamflex/types.hpp"

namespace hamflex::solvers {

/// Sparse Cholesky A = L L^T for SPD matrices with a uniform small
/// block structure (3x3 vertex blocks of a vector-valued P1 space).
/// Fill-reducing AMD runs on the block graph; the up-looking numeric
/// phase then works on dense blocks, which is markedly faster than a
/// scalar factorization for the same fill. The symbolic structure is
/// computed once and reused across refactorizations with new values.
class BlockCholesky {
public:
  BlockCholesky() = default;
  BlockCholesky(const SpMat& a, int block_size);

  /// New values, same pattern.
  void refactorize(const SpMat& a);

  Vector solve(const Vector& rhs) const;
  Index dim() const { return block_size_ * n_blocks_; }

private:
  void analyze(const SpMat& a);
  void factorize(const SpMat& a);

  int block_size_ = 0;
  Index n_blocks_ = 0;
  bool analyzed_ = false;

  std::vector<int> perm_;     // block permutation: new position of old block
  std::vector<int> perm_inv_; // old block at new position

  // Block pattern of the permuted A (upper triangle stored row-wise).
  std::vector<Index> a_row_ptr_;
  std::vector<int> a_row_col_;

  // Structure of L (block CSC, strictly sub-diagonal entries).
  std::vector<Index> col_ptr_;
  std::vector<int> row_idx_;
  // Per row k: columns of L in ascending order (the row pattern) plus
  // for each the slot where L[k, j] lives.
  std::vector<Index> row_ptr_;
  std::vector<int> row_col_;
  std::vector<Index> row_slot_;

  std::vector<double> values_;      // 9 doubles per block, row-major
  std::vector<double> diag_;        // 9 doubles per block column (lower chol)
  std::vector<Index> fill_cursor_;  // scratch for the symbolic build

  // Refactorization scratch: scalar -> block-row scatter map aligned
  // with the value array of the analyzed matrix, plus dense buffers.
  std::vector<Index> scatter_slot_;
  std::vector<double> a_vals_;
  std::vector<double> x_work_;
};

} // namespace hamflex::solvers

#endif
