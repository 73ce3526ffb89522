// SPDX-License-Identifier: Apache-2.0

#include "hamflex/core/block_diag.hpp"

#include <Eigen/Cholesky>

#include "hamflex/error.hpp"
#include "hamflex/kernels/parallel.hpp"

namespace hamflex {

BlockDiagMatrix::BlockDiagMatrix(std::vector<Matrix> blocks)
    : blocks_(std::move(blocks)) {
  offsets_.reserve(blocks_.size() + 1);
  inverse_blocks_.reserve(blocks_.size());
  Index off = 0;
  for (size_t b = 0; b < blocks_.size(); ++b) {
    const Matrix& m = blocks_[b];
    if (m.rows() != m.cols())
      throw ConfigError("BlockDiagMatrix: block " + std::to_string(b) +
                        " is not square");
    offsets_.push_back(off);
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success)
      throw NotPositiveDefinite(static_cast<std::int64_t>(b),
                                "BlockDiagMatrix: block " + std::to_string(b) +
                                    " is not positive definite");
    inverse_blocks_.push_back(llt.solve(Matrix::Identity(m.rows(), m.cols())));
    off += m.rows();
  }
  offsets_.push_back(off);
  total_dim_ = off;
}

void BlockDiagMatrix::apply(const Vector& x, Vector& y) const {
  if (x.size() != total_dim_)
    throw ConfigError("BlockDiagMatrix::apply: dimension mismatch");
  y.resize(total_dim_);
  const Index nb = block_count();
  const bool parallel = kernels::parallel_enabled() && nb >= 256;
#pragma omp parallel for schedule(static) if (parallel) \
    num_threads(kernels::num_threads())
  for (Index b = 0; b < nb; ++b) {
    const Index off = offsets_[static_cast<size_t>(b)];
    const Index n = blocks_[static_cast<size_t>(b)].rows();
    y.segment(off, n).noalias() =
        blocks_[static_cast<size_t>(b)] * x.segment(off, n);
  }
}

Vector BlockDiagMatrix::apply(const Vector& x) const {
  Vector y;
  apply(x, y);
  return y;
}

void BlockDiagMatrix::solve_serial(const Vector& x, Vector& y) const {
  if (x.size() != total_dim_)
    throw ConfigError("BlockDiagMatrix::solve: dimension mismatch");
  y.resize(total_dim_);
  for (Index b = 0; b < block_count(); ++b) {
    const Index off = offsets_[static_cast<size_t>(b)];
    const Index n = blocks_[static_cast<size_t>(b)].rows();
    y.segment(off, n).noalias() =
        inverse_blocks_[static_cast<size_t>(b)] * x.segment(off, n);
  }
}

void BlockDiagMatrix::solve(const Vector& x, Vector& y) const {
  if (!kernels::parallel_enabled() || block_count() < 256) {
    solve_serial(x, y);
    return;
  }
  if (x.size() != total_dim_)
    throw ConfigError("BlockDiagMatrix::solve: dimension mismatch");
  y.resize(total_dim_);
  const Index nb = block_count();
#pragma omp parallel for schedule(static) num_threads(kernels::num_threads())
  for (Index b = 0; b < nb; ++b) {
    const Index off = offsets_[static_cast<size_t>(b)];
    const Index n = blocks_[static_cast<size_t>(b)].rows();
    y.segment(off, n).noalias() =
        inverse_blocks_[static_cast<size_t>(b)] * x.segment(off, n);
  }
}

Vector BlockDiagMatrix::solve(const Vector& x) const {
  Vector y;
  solve(x, y);
  return y;
}

double BlockDiagMatrix::quadratic_form(const Vector& x) const {
  if (x.size() != total_dim_)
    throw ConfigError("BlockDiagMatrix::quadratic_form: dimension mismatch");
  double acc = 0.0;
  for (Index b = 0; b < block_count(); ++b) {
    const Index off = offsets_[static_cast<size_t>(b)];
    const Index n = blocks_[static_cast<size_t>(b)].rows();
    acc += x.segment(off, n).dot(blocks_[static_cast<size_t>(b)] *
                                 x.segment(off, n));
  }
  return acc;
}

namespace {
SpMat blocks_to_sparse(const std::vector<Matrix>& blocks,
                       const std::vector<Index>& offsets, Index dim) {
  std::vector<Triplet> trips;
  for (size_t b = 0; b < blocks.size(); ++b) {
    const Index off = offsets[b];
    const Matrix& m = blocks[b];
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0.0) trips.emplace_back(off + i, off + j, m(i, j));
  }
  SpMat out(dim, dim);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}
} // namespace

SpMat BlockDiagMatrix::to_sparse() const {
  return blocks_to_sparse(blocks_, offsets_, total_dim_);
}

const SpMat& BlockDiagMatrix::inverse_sparse() const {
  if (!inverse_sparse_)
    inverse_sparse_ = std::make_shared<SpMat>(
        blocks_to_sparse(inverse_blocks_, offsets_, total_dim_));
  return *inverse_sparse_;
}

} // namespace hamflex
