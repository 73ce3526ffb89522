// SPDX-License-Identifier: Apache-2.0

#include "hamflex/solvers/block_cholesky.hpp"

#include <Eigen/OrderingMethods>
#include <algorithm>
#include <cmath>

#include "hamflex/error.hpp"

namespace hamflex::solvers {

namespace {
using Map3 = Eigen::Map<Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>;
using CMap3 = Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>;
using Mat3 = Eigen::Matrix<double, 3, 3, Eigen::RowMajor>;
} // namespace

BlockCholesky::BlockCholesky(const SpMat& a, int block_size)
    : block_size_(block_size) {
  if (block_size_ != 3)
    throw ConfigError("BlockCholesky: only 3x3 blocks are supported");
  if (a.rows() != a.cols() || a.rows() % block_size_ != 0)
    throw ConfigError("BlockCholesky: dimension is not a multiple of the "
                      "block size");
  n_blocks_ = a.rows() / block_size_;
  analyze(a);
  factorize(a);
}

void BlockCholesky::refactorize(const SpMat& a) {
  if (!analyzed_ || a.rows() != dim())
    throw ConfigError("BlockCholesky::refactorize before analyze");
  factorize(a);
}

void BlockCholesky::analyze(const SpMat& a) {
  const Index nb = n_blocks_;

  // Block adjacency from the scalar pattern.
  std::vector<std::pair<int, int>> block_entries;
  block_entries.reserve(static_cast<size_t>(a.nonZeros() / 4));
  for (Index col = 0; col < a.outerSize(); ++col)
    for (SpMat::InnerIterator it(a, col); it; ++it)
      block_entries.emplace_back(static_cast<int>(it.col() / 3),
                                 static_cast<int>(it.row() / 3));
  std::sort(block_entries.begin(), block_entries.end());
  block_entries.erase(std::unique(block_entries.begin(), block_entries.end()),
                      block_entries.end());

  // Fill-reducing AMD on the block graph, following the convention of
  // the simplicial Cholesky drivers: ordering() yields Pinv, the
  // factored matrix is indexed by P = Pinv^{-1}.
  {
    SpMat block_pattern(nb, nb);
    std::vector<Triplet> trips;
    trips.reserve(block_entries.size());
    for (const auto& e : block_entries)
      trips.emplace_back(e.second, e.first, 1.0);
    block_pattern.setFromTriplets(trips.begin(), trips.end());
    Eigen::AMDOrdering<int> ordering;
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> p_inv;
    ordering(block_pattern, p_inv);
    // ordering() returns Pinv; the factored matrix lives in the frame
    // of P = Pinv^{-1}, so old block idx[i] sits at new position i.
    perm_.resize(static_cast<size_t>(nb));
    perm_inv_.resize(static_cast<size_t>(nb));
    const auto& idx = p_inv.indices();
    for (int i = 0; i < nb; ++i) {
      perm_inv_[static_cast<size_t>(i)] = idx[i];
      perm_[static_cast<size_t>(idx[i])] = i;
    }
  }

  // Upper block pattern (j <= k) of the permuted matrix, row-wise.
  std::vector<std::vector<int>> rows(static_cast<size_t>(nb));
  for (const auto& e : block_entries) {
    const int k = perm_[static_cast<size_t>(e.second)];
    const int j = perm_[static_cast<size_t>(e.first)];
    if (j <= k) rows[static_cast<size_t>(k)].push_back(j);
  }
  a_row_ptr_.assign(static_cast<size_t>(nb) + 1, 0);
  a_row_col_.clear();
  for (Index k = 0; k < nb; ++k) {
    auto& r = rows[static_cast<size_t>(k)];
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    a_row_ptr_[static_cast<size_t>(k + 1)] =
        a_row_ptr_[static_cast<size_t>(k)] + static_cast<Index>(r.size());
    for (int j : r) a_row_col_.push_back(j);
  }

  // Elimination tree over blocks.
  std::vector<int> parent(static_cast<size_t>(nb), -1);
  std::vector<int> ancestor(static_cast<size_t>(nb), -1);
  for (int k = 0; k < nb; ++k) {
    for (Index p = a_row_ptr_[static_cast<size_t>(k)];
         p < a_row_ptr_[static_cast<size_t>(k + 1)]; ++p) {
      int j = a_row_col_[static_cast<size_t>(p)];
      while (j != -1 && j < k) {
        const int next = ancestor[static_cast<size_t>(j)];
        ancestor[static_cast<size_t>(j)] = k;
        if (next == -1) parent[static_cast<size_t>(j)] = k;
        j = next;
      }
    }
  }

  // Row patterns of L by climbing the tree from each original entry.
  std::vector<int> mark(static_cast<size_t>(nb), -1);
  std::vector<std::vector<int>> row_patterns(static_cast<size_t>(nb));
  std::vector<Index> col_count(static_cast<size_t>(nb), 0);
  for (int k = 0; k < nb; ++k) {
    mark[static_cast<size_t>(k)] = k;
    auto& pat = row_patterns[static_cast<size_t>(k)];
    for (Index p = a_row_ptr_[static_cast<size_t>(k)];
         p < a_row_ptr_[static_cast<size_t>(k + 1)]; ++p) {
      int j = a_row_col_[static_cast<size_t>(p)];
      while (j < k && mark[static_cast<size_t>(j)] != k) {
        mark[static_cast<size_t>(j)] = k;
        pat.push_back(j);
        j = parent[static_cast<size_t>(j)];
        if (j == -1) break;
      }
    }
    std::sort(pat.begin(), pat.end());
    for (int j : pat) ++col_count[static_cast<size_t>(j)];
  }

  col_ptr_.assign(static_cast<size_t>(nb) + 1, 0);
  for (Index j = 0; j < nb; ++j)
    col_ptr_[static_cast<size_t>(j + 1)] =
        col_ptr_[static_cast<size_t>(j)] + col_count[static_cast<size_t>(j)];
  const Index nnzb = col_ptr_[static_cast<size_t>(nb)];
  row_idx_.assign(static_cast<size_t>(nnzb), 0);
  row_ptr_.assign(static_cast<size_t>(nb) + 1, 0);
  row_col_.clear();
  row_slot_.clear();
  row_col_.reserve(static_cast<size_t>(nnzb));
  row_slot_.reserve(static_cast<size_t>(nnzb));
  fill_cursor_.assign(col_ptr_.begin(), col_ptr_.end() - 1);
  for (int k = 0; k < nb; ++k) {
    const auto& pat = row_patterns[static_cast<size_t>(k)];
    row_ptr_[static_cast<size_t>(k + 1)] =
        row_ptr_[static_cast<size_t>(k)] + static_cast<Index>(pat.size());
    for (int j : pat) {
      const Index slot = fill_cursor_[static_cast<size_t>(j)]++;
      row_idx_[static_cast<size_t>(slot)] = k;
      row_col_.push_back(j);
      row_slot_.push_back(slot);
    }
  }

  values_.assign(static_cast<size_t>(9 * nnzb), 0.0);
  diag_.assign(static_cast<size_t>(9 * nb), 0.0);

  // Scatter map from the scalar storage order of A into the dense
  // block rows, so refactorization is a single linear sweep. The
  // pattern of every subsequent matrix must match the analyzed one.
  const Index na = a_row_ptr_[static_cast<size_t>(nb)];
  a_vals_.assign(static_cast<size_t>(9 * na), 0.0);
  scatter_slot_.clear();
  scatter_slot_.reserve(static_cast<size_t>(a.nonZeros()));
  for (Index col = 0; col < a.outerSize(); ++col)
    for (SpMat::InnerIterator it(a, col); it; ++it) {
      const int bk = perm_[static_cast<size_t>(it.row() / 3)];
      const int bj = perm_[static_cast<size_t>(it.col() / 3)];
      if (bj > bk) {
        scatter_slot_.push_back(-1);
        continue;
      }
      const Index lo = a_row_ptr_[static_cast<size_t>(bk)];
      const Index hi = a_row_ptr_[static_cast<size_t>(bk + 1)];
      const auto begin = a_row_col_.begin() + lo;
      const auto end = a_row_col_.begin() + hi;
      const Index entry = lo + (std::lower_bound(begin, end, bj) - begin);
      const int r = static_cast<int>(it.row() % 3);
      const int c = static_cast<int>(it.col() % 3);
      scatter_slot_.push_back(9 * entry + 3 * r + c);
    }
  x_work_.assign(static_cast<size_t>(9 * nb), 0.0);
  analyzed_ = true;
}

void BlockCholesky::factorize(const SpMat& a) {
  const Index nb = n_blocks_;
  if (static_cast<size_t>(a.nonZeros()) != scatter_slot_.size())
    throw ConfigError("BlockCholesky: pattern changed between factorizations");

  std::vector<double>& a_vals = a_vals_;
  std::fill(a_vals.begin(), a_vals.end(), 0.0);
  {
    const double* av = a.valuePtr();
    for (size_t p = 0; p < scatter_slot_.size(); ++p)
      if (scatter_slot_[p] >= 0)
        a_vals[static_cast<size_t>(scatter_slot_[p])] = av[p];
  }

  std::fill(values_.begin(), values_.end(), 0.0);
  std::vector<double>& x = x_work_;

  for (int k = 0; k < nb; ++k) {
    const Index rp_lo = row_ptr_[static_cast<size_t>(k)];
    const Index rp_hi = row_ptr_[static_cast<size_t>(k + 1)];
    // Clear the workspace slots this row touches.
    for (Index p = rp_lo; p < rp_hi; ++p)
      Map3(x.data() + 9 * row_col_[static_cast<size_t>(p)]).setZero();

    Mat3 d = Mat3::Zero();
    for (Index p = a_row_ptr_[static_cast<size_t>(k)];
         p < a_row_ptr_[static_cast<size_t>(k + 1)]; ++p) {
      const int j = a_row_col_[static_cast<size_t>(p)];
      CMap3 av(a_vals.data() + 9 * p);
      if (j == k)
        d = av;
      else
        Map3(x.data() + 9 * j) = av;
    }

    for (Index p = rp_lo; p < rp_hi; ++p) {
      const int j = row_col_[static_cast<size_t>(p)];
      Map3 xj(x.data() + 9 * j);
      CMap3 dj(diag_.data() + 9 * j);
      // L[k,j] = X[j] * L[j,j]^{-T} (right triangular solve).
      Mat3 lkj = dj.transpose()
                     .triangularView<Eigen::Upper>()
                     .solve<Eigen::OnTheRight>(Mat3(xj));
      d.noalias() -= lkj * lkj.transpose();
      // Push updates into later columns of this row.
      for (Index q = col_ptr_[static_cast<size_t>(j)];
           row_idx_[static_cast<size_t>(q)] < k; ++q) {
        CMap3 lij(values_.data() + 9 * q);
        Map3(x.data() + 9 * row_idx_[static_cast<size_t>(q)]).noalias() -=
            lkj * lij.transpose();
      }
      Map3(values_.data() + 9 * row_slot_[static_cast<size_t>(p)]) = lkj;
    }

    // Dense Cholesky of the 3x3 diagonal block.
    Mat3 l = Mat3::Zero();
    for (int r = 0; r < 3; ++r) {
      double s = d(r, r);
      for (int c = 0; c < r; ++c) s -= l(r, c) * l(r, c);
      if (!(s > 0.0)) {
        const Index old_block = perm_inv_[static_cast<size_t>(k)];
        throw NotPositiveDefinite(
            3 * old_block + r,
            "BlockCholesky: non-positive pivot at index " +
                std::to_string(3 * old_block + r));
      }
      l(r, r) = std::sqrt(s);
      for (int i = r + 1; i < 3; ++i) {
        double v = d(i, r);
        for (int c = 0; c < r; ++c) v -= l(i, c) * l(r, c);
        l(i, r) = v / l(r, r);
      }
    }
    Map3(diag_.data() + 9 * k) = l;
  }
}

Vector BlockCholesky::solve(const Vector& rhs) const {
  if (rhs.size() != dim())
    throw ConfigError("BlockCholesky::solve: dimension mismatch");
  const Index nb = n_blocks_;
  Vector y(dim());
  for (Index b = 0; b < nb; ++b)
    y.segment<3>(3 * b) =
        rhs.segment<3>(3 * perm_inv_[static_cast<size_t>(b)]);

  // Forward solve L z = y using the row structure.
  for (int k = 0; k < nb; ++k) {
    Eigen::Vector3d acc = y.segment<3>(3 * k);
    for (Index p = row_ptr_[static_cast<size_t>(k)];
         p < row_ptr_[static_cast<size_t>(k + 1)]; ++p) {
      CMap3 lkj(values_.data() + 9 * row_slot_[static_cast<size_t>(p)]);
      acc.noalias() -= lkj * y.segment<3>(3 * row_col_[static_cast<size_t>(p)]);
    }
    CMap3 dk(diag_.data() + 9 * k);
    y.segment<3>(3 * k) =
        dk.triangularView<Eigen::Lower>().solve(acc);
  }

  // Backward solve L^T x = z using the column structure.
  for (int k = static_cast<int>(nb) - 1; k >= 0; --k) {
    Eigen::Vector3d acc = y.segment<3>(3 * k);
    for (Index p = col_ptr_[static_cast<size_t>(k)];
         p < col_ptr_[static_cast<size_t>(k + 1)]; ++p) {
      CMap3 lik(values_.data() + 9 * p);
      acc.noalias() -=
          lik.transpose() * y.segment<3>(3 * row_idx_[static_cast<size_t>(p)]);
    }
    CMap3 dk(diag_.data() + 9 * k);
    y.segment<3>(3 * k) =
        dk.transpose().triangularView<Eigen::Upper>().solve(acc);
  }

  Vector out(dim());
  for (Index b = 0; b < nb; ++b)
    out.segment<3>(3 * perm_inv_[static_cast<size_t>(b)]) = y.segment<3>(3 * b);
  return out;
}

} // namespace hamflex::solvers
