// SPDX-License-Identifier: Apache-2.0
#include "rsm/regression.hpp"

#include "rsm/basis.hpp"
#include "rsm/errors.hpp"

namespace rsm {

CoefficientMatrix::CoefficientMatrix(Matrix coefficients, int factors)
    : B(std::move(coefficients)), n(factors) {
  if (B.rows() != basis_size(n))
    throw DimensionMismatch("CoefficientMatrix: " + std::to_string(B.rows()) +
                            " rows do not match basis size " + std::to_string(basis_size(n)) +
                            " for n=" + std::to_string(n));
  if (B.cols() < 1) throw DimensionMismatch("CoefficientMatrix: need at least one response");
}

LeastSquaresEngine::LeastSquaresEngine(const Design& design) : design_(design), qr_(design.X) {
  const int p = design_.p;
  if (qr_.rank() < p) throw RankDeficient("fit: design matrix rank deficient");
  // (X'X)^{-1} = P R^{-1} R^{-T} P' from the pivoted factorization X P = Q R.
  Matrix r_inv = qr_.matrixR()
                     .topLeftCorner(p, p)
                     .triangularView<Eigen::Upper>()
                     .solve(Matrix::Identity(p, p));
  Matrix perm = qr_.colsPermutation();
  xtx_inv_ = perm * (r_inv * r_inv.transpose()) * perm.transpose();
  xtx_inv_ = ((xtx_inv_ + xtx_inv_.transpose()) / 2.0).eval();
}

FitResult LeastSquaresEngine::fit(const Matrix& y) const {
  const int N = design_.runs();
  const int p = design_.p;
  if (y.rows() != N)
    throw DimensionMismatch("fit: response matrix has " + std::to_string(y.rows()) +
                            " rows, design has " + std::to_string(N));
  if (y.cols() < 1) throw DimensionMismatch("fit: need at least one response column");

  FitResult result;
  result.coefficients = CoefficientMatrix(qr_.solve(y), design_.n);
  result.xtx_inv = xtx_inv_;
  result.runs = N;
  result.dof = N - p;
  if (result.dof >= 1) {
    Matrix resid = y - design_.X * result.coefficients.B;
    Matrix sigma = (resid.transpose() * resid) / static_cast<double>(result.dof);
    result.sigma_hat = ((sigma + sigma.transpose()) / 2.0).eval();
  }
  return result;
}

FitResult fit(const Design& design, const Matrix& y) {
  return LeastSquaresEngine(design).fit(y);
}

ResponseSurfaceTerms split_coefficients(const CoefficientMatrix& b, int k) {
  if (k < 0 || k >= b.r())
    throw IndexOutOfRange("split_coefficients: response index " + std::to_string(k) +
                          " outside [0, " + std::to_string(b.r()) + ")");
  const int n = b.n;
  ResponseSurfaceTerms terms;
  terms.intercept = b.B(0, k);
  terms.linear = b.B.col(k).segment(1, n);
  terms.quadratic = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) terms.quadratic(i, i) = b.B(1 + n + i, k);
  int idx = 1 + 2 * n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double half = b.B(idx++, k) / 2.0;
      terms.quadratic(i, j) = half;
      terms.quadratic(j, i) = half;
    }
  }
  return terms;
}

Vector assemble_coefficients(const ResponseSurfaceTerms& terms) {
  const int n = static_cast<int>(terms.linear.size());
  if (terms.quadratic.rows() != n || terms.quadratic.cols() != n)
    throw DimensionMismatch("assemble_coefficients: quadratic block does not match linear part");
  Vector col(basis_size(n));
  col(0) = terms.intercept;
  col.segment(1, n) = terms.linear;
  for (int i = 0; i < n; ++i) col(1 + n + i) = terms.quadratic(i, i);
  int idx = 1 + 2 * n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) col(idx++) = 2.0 * terms.quadratic(i, j);
  return col;
}

Vector predict(const CoefficientMatrix& b, const Vector& x) {
  if (static_cast<int>(x.size()) != b.n)
    throw DimensionMismatch("predict: point dimension " + std::to_string(x.size()) +
                            " does not match model n=" + std::to_string(b.n));
  return b.B.transpose() * basis_vector(x);
}

Matrix predict_covariance(const Vector& x, const FitResult& fit) {
  if (!fit.sigma_hat)
    throw InsufficientDof("predict_covariance: no residual degrees of freedom for Sigma_hat");
  if (static_cast<int>(x.size()) != fit.coefficients.n)
    throw DimensionMismatch("predict_covariance: point dimension mismatch");
  const Vector z = basis_vector(x);
  const double scale = z.dot(fit.xtx_inv * z);
  return scale * (*fit.sigma_hat);
}

}  // namespace rsm
