// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "rsm/regression.hpp"
#include "rsm/sensitivity.hpp"
#include "rsm/types.hpp"

namespace rsm {

/// sqrt(N)-scaled covariance of the column-stacked coefficient estimate:
/// theta_hat = N * (Sigma_hat (x) (X'X)^{-1}). Under row stacking the same
/// object is (X'X)^{-1} (x) Sigma_hat; the tag pins which one this is.
struct CoefficientCovariance {
  Matrix theta_hat;  // (p*r) x (p*r)
  int sample_size = 0;
  VecOrdering ordering = VecOrdering::ColumnStacked;
};

/// Wald confidence ellipsoid {x : (x - center)' precision (x - center) <= threshold}.
struct ConfidenceEllipsoid {
  Vector center;
  Matrix precision;  // N * Xi^{-1}
  double threshold = 0.0;  // chi^2_n quantile at 1 - alpha
  double alpha = 0.0;
};

/// Asymptotic law of the critical point: Xi is the sqrt(N)-scaled
/// covariance from the delta method, cov_xstar = Xi / N the usable one.
struct AsymptoticReport {
  Matrix xi;
  Matrix cov_xstar;
  int sample_size = 0;
  double alpha = 0.0;
  std::vector<std::pair<double, double>> intervals;
  ConfidenceEllipsoid ellipsoid;
  bool has_ellipsoid = false;
};

/// theta_hat = N * (Sigma_hat (x) (X'X)^{-1}), column-stacked tag.
CoefficientCovariance coefficient_covariance(const FitResult& fit, int sample_size);

/// Same construction from raw pieces (e.g. the true Sigma in simulations).
CoefficientCovariance coefficient_covariance(const Matrix& sigma, const Matrix& xtx_inv,
                                             int sample_size);

/// Xi = J_x theta_hat J_x' (symmetrized); fills xi, cov_xstar, sample_size.
/// Throws OrderingMismatch if the Jacobian and covariance tags disagree.
AsymptoticReport critical_point_covariance(const SensitivityJacobian& jac,
                                           const CoefficientCovariance& theta);

/// Per-coordinate normal intervals x*_i +- z_{1-alpha/2} sqrt(cov_ii).
std::vector<std::pair<double, double>> confidence_intervals(const Vector& x_star,
                                                            const AsymptoticReport& report,
                                                            double alpha);

/// Wald ellipsoid at level 1 - alpha; requires Xi positive definite.
ConfidenceEllipsoid confidence_ellipsoid(const Vector& x_star, const AsymptoticReport& report,
                                         double alpha);

/// Commutation matrix K mapping vec(B) to vec(B') for a p x r matrix.
Matrix commutation_matrix(int p, int r);

}  // namespace rsm
