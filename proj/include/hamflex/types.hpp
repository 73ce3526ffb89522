// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_TYPES_HPP
#define HAMFLEX_TYPES_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace hamflex {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;
using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

} // namespace hamflex

#endif
