// SPDX-License-Identifier: Apache-2.0
#include "rsm/asymptotics.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "rsm/distributions.hpp"
#include "rsm/errors.hpp"

namespace rsm {

CoefficientCovariance coefficient_covariance(const Matrix& sigma, const Matrix& xtx_inv,
                                             int sample_size) {
  if (sigma.rows() != sigma.cols() || xtx_inv.rows() != xtx_inv.cols())
    throw DimensionMismatch("coefficient_covariance: blocks must be square");
  const int p = static_cast<int>(xtx_inv.rows());
  const int r = static_cast<int>(sigma.rows());

  CoefficientCovariance cov;
  cov.sample_size = sample_size;
  cov.ordering = VecOrdering::ColumnStacked;
  cov.theta_hat.resize(p * r, p * r);
  for (int k = 0; k < r; ++k)
    for (int l = 0; l < r; ++l)
      cov.theta_hat.block(k * p, l * p, p, p) = sigma(k, l) * xtx_inv;
  cov.theta_hat *= static_cast<double>(sample_size);
  cov.theta_hat = ((cov.theta_hat + cov.theta_hat.transpose()) / 2.0).eval();
  return cov;
}

CoefficientCovariance coefficient_covariance(const FitResult& fit, int sample_size) {
  if (!fit.sigma_hat)
    throw InsufficientDof("coefficient_covariance: Sigma_hat unavailable (N == p)");
  if (sample_size != fit.runs)
    throw DimensionMismatch("coefficient_covariance: sample size " + std::to_string(sample_size) +
                            " does not match the " + std::to_string(fit.runs) + " fitted runs");
  return coefficient_covariance(*fit.sigma_hat, fit.xtx_inv, sample_size);
}

AsymptoticReport critical_point_covariance(const SensitivityJacobian& jac,
                                           const CoefficientCovariance& theta) {
  if (jac.ordering != theta.ordering)
    throw OrderingMismatch(
        "critical_point_covariance: Jacobian and coefficient covariance use different vec "
        "stacking conventions");
  if (jac.J_x.cols() != theta.theta_hat.rows())
    throw DimensionMismatch("critical_point_covariance: Jacobian has " +
                            std::to_string(jac.J_x.cols()) + " columns, covariance is " +
                            std::to_string(theta.theta_hat.rows()) + " wide");

  AsymptoticReport report;
  Matrix xi = jac.J_x * theta.theta_hat * jac.J_x.transpose();
  report.xi = ((xi + xi.transpose()) / 2.0).eval();
  report.sample_size = theta.sample_size;
  report.cov_xstar = report.xi / static_cast<double>(theta.sample_size);
  return report;
}

std::vector<std::pair<double, double>> confidence_intervals(const Vector& x_star,
                                                            const AsymptoticReport& report,
                                                            double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidAlpha("confidence_intervals: alpha outside (0,1)");
  if (x_star.size() != report.cov_xstar.rows())
    throw DimensionMismatch("confidence_intervals: point dimension mismatch");
  const double z = normal_quantile(1.0 - alpha / 2.0);
  std::vector<std::pair<double, double>> intervals;
  intervals.reserve(static_cast<std::size_t>(x_star.size()));
  for (int i = 0; i < x_star.size(); ++i) {
    const double var = std::max(0.0, report.cov_xstar(i, i));
    const double half = z * std::sqrt(var);
    intervals.emplace_back(x_star(i) - half, x_star(i) + half);
  }
  return intervals;
}

ConfidenceEllipsoid confidence_ellipsoid(const Vector& x_star, const AsymptoticReport& report,
                                         double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidAlpha("confidence_ellipsoid: alpha outside (0,1)");
  const int n = static_cast<int>(x_star.size());
  if (report.xi.rows() != n) throw DimensionMismatch("confidence_ellipsoid: dimension mismatch");
  Eigen::LLT<Matrix> llt(report.xi);
  if (llt.info() != Eigen::Success)
    throw SingularCovariance("confidence_ellipsoid: Xi is not positive definite");

  ConfidenceEllipsoid ell;
  ell.center = x_star;
  ell.precision = static_cast<double>(report.sample_size) * llt.solve(Matrix::Identity(n, n));
  ell.precision = ((ell.precision + ell.precision.transpose()) / 2.0).eval();
  ell.threshold = chi_squared_quantile(1.0 - alpha, n);
  ell.alpha = alpha;
  return ell;
}

Matrix commutation_matrix(int p, int r) {
  Matrix k = Matrix::Zero(p * r, p * r);
  // row index: position of B(i,j) in vec(B'); column: position in vec(B)
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < p; ++i) k(i * r + j, j * p + i) = 1.0;
  return k;
}

}  // namespace rsm
