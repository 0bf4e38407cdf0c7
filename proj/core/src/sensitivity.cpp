// SPDX-License-Identifier: Apache-2.0
#include "rsm/sensitivity.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "rsm/basis.hpp"
#include "rsm/errors.hpp"

namespace rsm {

namespace {

constexpr double kDegeneracyGuard = 1e-8;

void check_positive_definite(const Matrix& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(p);
  const int n = static_cast<int>(p.rows());
  const double scale = std::max(1.0, std::abs(eig.eigenvalues()(n - 1)));
  if (!(eig.eigenvalues()(0) > 1e-12 * scale))
    throw NotPositiveDefinite("lagrangian blocks: d^2L/dxdx' is not positive definite (min eig " +
                              std::to_string(eig.eigenvalues()(0)) + ")");
}

}  // namespace

LagrangianBlocks lagrangian_blocks(const FunctionalDerivatives& derivatives,
                                   const KktPoint& point) {
  const int n = static_cast<int>(point.x_star.size());
  if (derivatives.hessian.rows() != n || derivatives.hessian.cols() != n ||
      derivatives.coeff_cross.rows() != n)
    throw DimensionMismatch("lagrangian_blocks: derivative blocks disagree on n");

  LagrangianBlocks blocks;
  blocks.P = derivatives.hessian + 2.0 * point.lambda_star * Matrix::Identity(n, n);
  blocks.P = ((blocks.P + blocks.P.transpose()) / 2.0).eval();
  blocks.Q = 2.0 * point.x_star;
  blocks.G = derivatives.coeff_cross;
  blocks.lambda_star = point.lambda_star;
  blocks.constraint_slack = point.slack();
  blocks.margin_scale = std::max(1.0, point.radius * point.radius);
  check_positive_definite(blocks.P);
  return blocks;
}

LagrangianBlocks lagrangian_blocks(const QuadraticObjective& obj, const WeightVector& w,
                                   const KktPoint& point) {
  return lagrangian_blocks(weighted_sum_derivatives(w, obj, point.x_star), point);
}

Matrix bordered_inverse(const Matrix& p, const Vector& q) {
  const int n = static_cast<int>(p.rows());
  if (p.cols() != n || q.size() != n) throw DimensionMismatch("bordered_inverse: shape mismatch");
  if (q.norm() <= 1e-14 * std::max(1.0, p.norm()))
    throw SingularBorder("bordered_inverse: zero border makes the matrix singular");
  Eigen::LLT<Matrix> llt(p);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("bordered_inverse: P is not positive definite");

  const Matrix p_inv = llt.solve(Matrix::Identity(n, n));
  const Vector p_inv_q = llt.solve(q);
  const double s = q.dot(p_inv_q);  // Q' P^{-1} Q, positive since P is SPD

  Matrix out(n + 1, n + 1);
  out.topLeftCorner(n, n) = p_inv - p_inv_q * p_inv_q.transpose() / s;
  out.topRightCorner(n, 1) = p_inv_q / s;
  out.bottomLeftCorner(1, n) = p_inv_q.transpose() / s;
  out(n, n) = -1.0 / s;
  return out;
}

SensitivityJacobian solution_jacobian(const LagrangianBlocks& blocks, bool active) {
  SensitivityJacobian jac;
  jac.active = active;
  jac.ordering = VecOrdering::ColumnStacked;

  Eigen::LLT<Matrix> llt(blocks.P);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("solution_jacobian: P is not positive definite");

  if (!active) {
    // Constraint row drops from the implicit system: P J_x = -G.
    jac.J_x = -llt.solve(blocks.G);
    jac.J_lambda = RowVector::Zero(blocks.G.cols());
    return jac;
  }

  if (blocks.lambda_star <= kDegeneracyGuard * blocks.margin_scale)
    throw DegenerateComplementarity(
        "solution_jacobian: multiplier " + std::to_string(blocks.lambda_star) +
        " too close to zero on the active boundary; derivative undefined");

  // Bordered system [[P, Q], [Q', 0]] [J_x; J_lambda] = -[G; 0].
  const Matrix p_inv_g = llt.solve(blocks.G);
  const Vector p_inv_q = llt.solve(blocks.Q);
  const double s = blocks.Q.dot(p_inv_q);
  const RowVector qt_p_inv_g = blocks.Q.transpose() * p_inv_g;
  jac.J_x = -(p_inv_g - p_inv_q * (qt_p_inv_g / s));
  jac.J_lambda = -qt_p_inv_g / s;
  return jac;
}

SensitivityJacobian fd_solution_jacobian(const FitResult& fit, const WeightVector& w,
                                         const SphereRegion& region, double h) {
  if (!(h > 0.0)) throw InvalidArgument("fd_solution_jacobian: step must be positive");
  const CoefficientMatrix& b = fit.coefficients;
  const int p = b.p();
  const int r = b.r();
  const int n = b.n;

  const KktPoint base = solve_sphere(weighted_objective(w, b), region);
  const double guard = kDegeneracyGuard * std::max(1.0, region.radius_sq());
  if (base.active ? base.lambda_star <= guard : base.slack() <= guard)
    throw DegenerateComplementarity(
        "fd_solution_jacobian: base point is not strictly complementary");

  SensitivityJacobian jac;
  jac.active = base.active;
  jac.ordering = VecOrdering::ColumnStacked;
  jac.J_x.resize(n, p * r);
  jac.J_lambda.resize(p * r);

  CoefficientMatrix perturbed = b;
  for (int k = 0; k < r; ++k) {
    for (int j = 0; j < p; ++j) {
      const double value = b.B(j, k);
      if (value + h == value && value - h == value)
        throw StepTooSmall("fd_solution_jacobian: step vanishes against coefficient " +
                           std::to_string(value));
      perturbed.B(j, k) = value + h;
      const KktPoint plus = solve_sphere(weighted_objective(w, perturbed), region);
      perturbed.B(j, k) = value - h;
      const KktPoint minus = solve_sphere(weighted_objective(w, perturbed), region);
      perturbed.B(j, k) = value;
      if (plus.active != base.active || minus.active != base.active)
        throw NumericalFailure("fd_solution_jacobian: constraint activity changed under "
                               "perturbation; reduce h or move off the degenerate point");
      jac.J_x.col(k * p + j) = (plus.x_star - minus.x_star) / (2.0 * h);
      jac.J_lambda(k * p + j) = (plus.lambda_star - minus.lambda_star) / (2.0 * h);
    }
  }
  return jac;
}

}  // namespace rsm
