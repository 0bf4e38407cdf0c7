// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "rsm/types.hpp"

namespace rsm {

/// Design (regression) matrix for a set of experimental runs. Row i of X is
/// the basis vector of points[i]; full column rank is verified on
/// construction via build_design.
struct Design {
  Matrix X;                    // N x p
  std::vector<Vector> points;  // N factor settings of dimension n
  int n = 0;
  int p = 0;
  double sv_min = 0.0;  // extreme singular values of X, kept as
  double sv_max = 0.0;  // rank diagnostics for reports

  int runs() const { return static_cast<int>(X.rows()); }
};

/// Assemble and rank-check the design matrix for the given runs.
/// Throws DimensionMismatch if points disagree on n, RankDeficient if
/// N < p or the smallest singular value is below 1e-10 of the largest.
Design build_design(const std::vector<Vector>& points);

/// Central composite design: 2^n factorial points at +-1, 2n axial points
/// at +-axial, and n_center origin points, in that order.
std::vector<Vector> ccd_design(int n, double axial, int n_center);

/// Vertically replicate a design `times` times (keeps X'X/N fixed).
Design replicate_design(const Design& base, int times);

}  // namespace rsm
