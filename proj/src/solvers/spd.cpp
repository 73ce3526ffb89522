// SPDX-License-Identifier: Apache-2.0

#include "hamflex/solvers/spd.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>
#include <optional>

#include "hamflex/error.hpp"
#include "hamflex/solvers/block_cholesky.hpp"

namespace hamflex::solvers {

struct SpdFactorization::Impl {
  Eigen::SimplicialLDLT<SpMat> ldlt;
  std::optional<BlockCholesky> blocked;
  Index n = 0;
  bool analyzed = false;

  [[noreturn]] void throw_not_positive(Index permuted) {
    const Index original =
        permuted >= 0 && permuted < n
            ? static_cast<Index>(ldlt.permutationPinv().indices()[permuted])
            : permuted;
    throw NotPositiveDefinite(original,
                              "factor_spd: non-positive pivot at index " +
                                  std::to_string(original));
  }

  void check_positive() {
    const auto& d = ldlt.vectorD();
    for (Index i = 0; i < d.size(); ++i)
      if (!(d[i] > 0.0)) throw_not_positive(i);
  }

  // A failed LDLT of a symmetric matrix means a non-positive pivot;
  // locate it in the partial D for the message.
  void check_factorization() {
    if (ldlt.info() == Eigen::Success) {
      check_positive();
      return;
    }
    const auto& d = ldlt.vectorD();
    for (Index i = 0; i < d.size(); ++i)
      if (!(d[i] > 0.0) || !std::isfinite(d[i])) throw_not_positive(i);
    throw_not_positive(-1);
  }
};

SpdFactorization::SpdFactorization() : impl_(std::make_unique<Impl>()) {}
SpdFactorization::~SpdFactorization() = default;
SpdFactorization::SpdFactorization(SpdFactorization&&) noexcept = default;
SpdFactorization& SpdFactorization::operator=(SpdFactorization&&) noexcept =
    default;

SpdFactorization::SpdFactorization(const SpMat& a, int block_size)
    : impl_(std::make_unique<Impl>()) {
  impl_->n = a.rows();
  if (block_size > 1) {
    impl_->blocked.emplace(a, block_size);
    impl_->analyzed = true;
    return;
  }
  impl_->ldlt.compute(a);
  impl_->analyzed = true;
  impl_->check_factorization();
}

void SpdFactorization::refactorize(const SpMat& a) {
  if (impl_->blocked) {
    impl_->blocked->refactorize(a);
    return;
  }
  if (!impl_->analyzed) {
    impl_->ldlt.analyzePattern(a);
    impl_->analyzed = true;
    impl_->n = a.rows();
  }
  impl_->ldlt.factorize(a);
  impl_->check_factorization();
}

Vector SpdFactorization::solve(const Vector& rhs) const {
  if (rhs.size() != impl_->n)
    throw ConfigError("SpdFactorization::solve: dimension mismatch");
  if (impl_->blocked) return impl_->blocked->solve(rhs);
  return impl_->ldlt.solve(rhs);
}

Index SpdFactorization::dim() const { return impl_->n; }

SpdFactorization factor_spd(const SpMat& a, int block_size) {
  if (a.rows() != a.cols())
    throw ConfigError("factor_spd: matrix is not square");
  // Symmetry audit on the assembled matrix.
  SpMat diff = SpMat(a.transpose()) - a;
  double max_abs = 0.0;
  for (Index k = 0; k < a.outerSize(); ++k)
    for (SpMat::InnerIterator it(a, k); it; ++it)
      max_abs = std::max(max_abs, std::abs(it.value()));
  for (Index k = 0; k < diff.outerSize(); ++k)
    for (SpMat::InnerIterator it(diff, k); it; ++it)
      if (std::abs(it.value()) > 1e-14 * std::max(max_abs, 1.0))
        throw ConfigError("factor_spd: matrix is not symmetric");
  return SpdFactorization(a, block_size);
}

} // namespace hamflex::solvers
