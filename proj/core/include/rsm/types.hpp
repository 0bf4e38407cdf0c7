// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace rsm {

using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Matrix = Eigen::MatrixXd;

/// Stacking convention for vec(B) and the matching Kronecker covariance.
/// Objects carrying a vec-indexed quantity are tagged so that a covariance
/// built under one convention can never be combined with a Jacobian built
/// under the other.
enum class VecOrdering {
  ColumnStacked,  ///< vec(B): columns of B stacked top to bottom
  RowStacked      ///< vec(B'): rows of B stacked (the transpose convention)
};

}  // namespace rsm
