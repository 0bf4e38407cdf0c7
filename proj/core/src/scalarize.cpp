// SPDX-License-Identifier: Apache-2.0
#include "rsm/scalarize.hpp"

#include <cmath>

#include "rsm/basis.hpp"
#include "rsm/errors.hpp"

namespace rsm {

WeightVector::WeightVector(Vector weights) : w(std::move(weights)) {
  if (w.size() < 1) throw InvalidWeights("weights: empty");
  for (int k = 0; k < w.size(); ++k)
    if (!(w(k) >= 0.0))
      throw InvalidWeights("weights: w[" + std::to_string(k) + "] = " + std::to_string(w(k)) +
                           " is negative or NaN");
  if (std::abs(w.sum() - 1.0) > 1e-12)
    throw InvalidWeights("weights: sum " + std::to_string(w.sum()) + " != 1");
}

QuadraticObjective weighted_objective(const WeightVector& w, const CoefficientMatrix& b) {
  if (w.r() != b.r())
    throw DimensionMismatch("weighted_objective: " + std::to_string(w.r()) + " weights for " +
                            std::to_string(b.r()) + " responses");
  const int n = b.n;
  QuadraticObjective obj;
  obj.beta0_bar = 0.0;
  obj.beta1_bar = Vector::Zero(n);
  obj.B_bar = Matrix::Zero(n, n);
  for (int k = 0; k < b.r(); ++k) {
    const ResponseSurfaceTerms terms = split_coefficients(b, k);
    obj.beta0_bar += w.w(k) * terms.intercept;
    obj.beta1_bar += w.w(k) * terms.linear;
    obj.B_bar += w.w(k) * terms.quadratic;
  }
  obj.B_bar = ((obj.B_bar + obj.B_bar.transpose()) / 2.0).eval();
  return obj;
}

double evaluate_functional(const QuadraticObjective& obj, const Vector& x) {
  if (x.size() != obj.beta1_bar.size())
    throw DimensionMismatch("evaluate_functional: point dimension mismatch");
  return obj.beta0_bar + obj.beta1_bar.dot(x) + x.dot(obj.B_bar * x);
}

Vector functional_gradient(const QuadraticObjective& obj, const Vector& x) {
  if (x.size() != obj.beta1_bar.size())
    throw DimensionMismatch("functional_gradient: point dimension mismatch");
  return obj.beta1_bar + 2.0 * obj.B_bar * x;
}

FunctionalDerivatives weighted_sum_derivatives(const WeightVector& w, const QuadraticObjective& obj,
                                               const Vector& x) {
  const int n = obj.n();
  if (x.size() != n) throw DimensionMismatch("weighted_sum_derivatives: point dimension mismatch");
  const Matrix m = basis_jacobian(x);
  const int p = static_cast<int>(m.cols());
  FunctionalDerivatives d;
  d.hessian = 2.0 * obj.B_bar;
  d.coeff_cross.resize(n, p * w.r());
  for (int k = 0; k < w.r(); ++k) d.coeff_cross.middleCols(k * p, p) = w.w(k) * m;
  return d;
}

std::vector<int> pareto_filter(const std::vector<Vector>& candidates) {
  if (candidates.empty()) throw EmptyInput("pareto_filter: no candidates");
  const int m = static_cast<int>(candidates.size());
  const auto r = candidates.front().size();
  for (const auto& c : candidates)
    if (c.size() != r) throw DimensionMismatch("pareto_filter: mixed response dimensions");

  // a dominates b: a <= b componentwise and a != b
  auto dominates = [](const Vector& a, const Vector& b) {
    bool strict = false;
    for (int i = 0; i < a.size(); ++i) {
      if (a(i) > b(i)) return false;
      if (a(i) < b(i)) strict = true;
    }
    return strict;
  };

  std::vector<int> kept;
  for (int i = 0; i < m; ++i) {
    bool dominated = false;
    for (int j = 0; j < m && !dominated; ++j)
      dominated = (j != i) && dominates(candidates[j], candidates[i]);
    if (!dominated) kept.push_back(i);
  }
  return kept;
}

}  // namespace rsm
