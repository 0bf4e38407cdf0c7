// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rsm/regression.hpp"
#include "rsm/scalarize.hpp"
#include "rsm/solver.hpp"
#include "rsm/types.hpp"

namespace rsm {

/// Second derivatives of the Lagrangian at a KKT point:
///   P = d^2 L / dx dx' = 2 B_bar + 2 lambda* I
///   Q = d^2 L / dlambda dx = 2 x*
///   G = d^2 L / dx dvec'(B) = w' (x) M(x*)   (column-stacked vec, response-
///       major blocks: the block for response k is w_k M(x*))
struct LagrangianBlocks {
  Matrix P;
  Vector Q;
  Matrix G;
  double lambda_star = 0.0;
  double constraint_slack = 0.0;  // c^2 - ||x*||^2
  double margin_scale = 1.0;      // max(1, c^2), scales the degeneracy guard
};

/// Critical-point derivatives with respect to the coefficient matrix.
struct SensitivityJacobian {
  Matrix J_x;           // n x (p*r), dx*/dvec(B)
  RowVector J_lambda;   // 1 x (p*r), dlambda*/dvec(B)
  bool active = false;
  VecOrdering ordering = VecOrdering::ColumnStacked;
};

/// Assemble P, Q, G for the weighted-sum functional at a solved point.
/// Throws NotPositiveDefinite if P fails the second-order assumption.
LagrangianBlocks lagrangian_blocks(const QuadraticObjective& obj, const WeightVector& w,
                                   const KktPoint& point);

/// Same assembly for a caller-supplied functional given its derivative
/// blocks (hessian and coefficient cross derivative) at the point.
LagrangianBlocks lagrangian_blocks(const FunctionalDerivatives& derivatives,
                                   const KktPoint& point);

/// Inverse of the bordered KKT matrix [[P, Q], [Q', 0]] in closed block
/// form; P must be symmetric positive definite and Q nonzero.
Matrix bordered_inverse(const Matrix& p, const Vector& q);

/// dx*/dvec(B) via the implicit-function system at the KKT point.
/// Active constraint: the bordered block formula; inactive: -P^{-1} G with
/// the constraint row dropped. Throws DegenerateComplementarity when the
/// multiplier is too close to zero on an active boundary.
SensitivityJacobian solution_jacobian(const LagrangianBlocks& blocks, bool active);

/// Central-difference reference Jacobian: perturb each entry of B by +-h,
/// re-solve, and difference. Verification oracle for solution_jacobian.
SensitivityJacobian fd_solution_jacobian(const FitResult& fit, const WeightVector& w,
                                         const SphereRegion& region, double h);

}  // namespace rsm
