// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "rsm/regression.hpp"
#include "rsm/types.hpp"

namespace rsm {

/// Response weights on the unit simplex: w_k >= 0, sum w_k = 1 (within 1e-12).
struct WeightVector {
  Vector w;

  WeightVector() = default;
  explicit WeightVector(Vector weights);

  int r() const { return static_cast<int>(w.size()); }
};

/// Scalarized quadratic objective f(x) = beta0 + beta1'x + x'B x.
struct QuadraticObjective {
  double beta0_bar = 0.0;
  Vector beta1_bar;
  Matrix B_bar;

  int n() const { return static_cast<int>(beta1_bar.size()); }
};

/// Derivatives of a scalarized objective needed by the sensitivity blocks:
/// the Hessian in x and the cross derivative of the gradient with respect to
/// the column-stacked coefficient matrix. Any functional an integrator
/// supplies in this form can be pushed through the critical-point Jacobian.
struct FunctionalDerivatives {
  Matrix hessian;      // n x n, d^2 f / dx dx'
  Matrix coeff_cross;  // n x (p*r), d^2 f / dx dvec'(B)
};

/// Weighted-sum scalarization: componentwise w-average of the per-response
/// coefficient decompositions.
QuadraticObjective weighted_objective(const WeightVector& w, const CoefficientMatrix& b);

double evaluate_functional(const QuadraticObjective& obj, const Vector& x);

/// Gradient beta1 + 2 B x of the scalarized objective.
Vector functional_gradient(const QuadraticObjective& obj, const Vector& x);

/// Closed-form derivatives of the weighted-sum functional at x:
/// hessian 2*B_bar and coefficient cross block w' (x) M(x).
FunctionalDerivatives weighted_sum_derivatives(const WeightVector& w, const QuadraticObjective& obj,
                                               const Vector& x);

/// Indices of non-dominated candidates under componentwise <= and != .
/// Stable ascending order; exact duplicates are mutually non-dominating and
/// all retained.
std::vector<int> pareto_filter(const std::vector<Vector>& candidates);

}  // namespace rsm
