// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace rsm {

/// Regularized lower incomplete gamma P(a, x), by series expansion for
/// x < a + 1 and a Lentz continued fraction otherwise.
double lower_regularized_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double upper_regularized_gamma(double a, double x);

double normal_cdf(double x);
double normal_pdf(double x);

/// Standard normal quantile by safeguarded Newton inversion of normal_cdf;
/// converges to |cdf(x) - q| <= 1e-12. Throws InvalidAlpha outside (0, 1).
double normal_quantile(double q);

double chi_squared_cdf(double x, int dof);
double chi_squared_pdf(double x, int dof);

/// Chi-squared quantile by safeguarded Newton inversion of the CDF
/// (Wilson-Hilferty start). Throws InvalidAlpha outside (0, 1).
double chi_squared_quantile(double q, int dof);

}  // namespace rsm
