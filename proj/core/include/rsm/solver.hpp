// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rsm/scalarize.hpp"
#include "rsm/types.hpp"

namespace rsm {

/// Spherical experimental region ||x||^2 <= c^2 in coded units.
struct SphereRegion {
  double radius = 1.0;

  SphereRegion() = default;
  explicit SphereRegion(double c);

  double radius_sq() const { return radius * radius; }
};

/// First-order condition residuals at a candidate (x, lambda):
///   stationarity     ||grad f + 2 lambda x||_inf
///   feasibility      max(0, ||x||^2 - c^2)
///   complementarity  |lambda (||x||^2 - c^2)|
///   strict_margin    min(lambda, c^2 - ||x||^2), positive only when the
///                    multiplier is active while the constraint is slack
struct KktResiduals {
  double stationarity = 0.0;
  double feasibility = 0.0;
  double complementarity = 0.0;
  double strict_margin = 0.0;
};

/// Certified optimum of the sphere-constrained scalarized program.
struct KktPoint {
  Vector x_star;
  double lambda_star = 0.0;
  bool active = false;
  double radius = 0.0;  // region the point was solved on
  KktResiduals residuals;

  double slack() const { return radius * radius - x_star.squaredNorm(); }
};

/// Exact global minimizer of beta1'x + x'Bx over ||x|| <= c.
///
/// Eigendecomposition of B followed by Newton-safeguarded bisection on the
/// secular equation ||(B + lambda I)^{-1} beta1/2|| = c for the boundary
/// multiplier. Throws NonUniqueMinimizer in the hard case (gradient
/// orthogonal to the minimal eigenspace with the boundary equation forcing
/// lambda = -lambda_min), NumericalFailure if the secular iteration stalls.
KktPoint solve_sphere(const QuadraticObjective& obj, const SphereRegion& region);

KktResiduals kkt_residuals(const Vector& x, double lambda, const QuadraticObjective& obj,
                           const SphereRegion& region);
KktResiduals kkt_residuals(const KktPoint& point, const QuadraticObjective& obj,
                           const SphereRegion& region);

}  // namespace rsm
