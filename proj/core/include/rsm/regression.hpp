// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "rsm/design.hpp"
#include "rsm/types.hpp"

namespace rsm {

/// Estimated (or true) coefficient matrix B, p x r, one column per
/// response, each laid out in the canonical basis order.
struct CoefficientMatrix {
  Matrix B;
  int n = 0;  // factor count; p = basis_size(n) must equal B.rows()

  CoefficientMatrix() = default;
  CoefficientMatrix(Matrix coefficients, int factors);

  int p() const { return static_cast<int>(B.rows()); }
  int r() const { return static_cast<int>(B.cols()); }
};

/// One response's coefficients split into intercept, linear part, and the
/// symmetric quadratic matrix B_k (diagonal beta_iik, off-diagonal beta_ijk/2).
struct ResponseSurfaceTerms {
  double intercept = 0.0;
  Vector linear;
  Matrix quadratic;
};

struct FitResult {
  CoefficientMatrix coefficients;
  std::optional<Matrix> sigma_hat;  // r x r; absent when N == p
  Matrix xtx_inv;                   // p x p
  int dof = 0;                      // N - p
  int runs = 0;                     // N
};

/// Multivariate least squares with a factorization precomputed once per
/// design; use this when refitting many response matrices on a fixed X.
class LeastSquaresEngine {
 public:
  explicit LeastSquaresEngine(const Design& design);

  FitResult fit(const Matrix& y) const;
  const Design& design() const { return design_; }
  const Matrix& xtx_inv() const { return xtx_inv_; }

 private:
  Design design_;
  Eigen::ColPivHouseholderQR<Matrix> qr_;
  Matrix xtx_inv_;
};

/// One-shot least squares fit of Y (N x r) on the design.
FitResult fit(const Design& design, const Matrix& y);

/// Split column k (0-based) of B into (intercept, linear, quadratic) terms.
ResponseSurfaceTerms split_coefficients(const CoefficientMatrix& b, int k);

/// Reassemble a coefficient column from split terms (inverse of
/// split_coefficients; exact round trip).
Vector assemble_coefficients(const ResponseSurfaceTerms& terms);

/// Predicted response vector B' z(x), length r.
Vector predict(const CoefficientMatrix& b, const Vector& x);

/// Unbiased prediction covariance z'(X'X)^{-1} z * Sigma_hat.
Matrix predict_covariance(const Vector& x, const FitResult& fit);

}  // namespace rsm
