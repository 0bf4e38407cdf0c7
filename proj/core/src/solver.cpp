// SPDX-License-Identifier: Apache-2.0
#include "rsm/solver.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "rsm/errors.hpp"

namespace rsm {

namespace {

constexpr double kLambdaSnap = 1e-10;   // multipliers below this are treated as 0
constexpr int kMaxSecularIter = 200;

KktPoint make_point(Vector x, double lambda, const QuadraticObjective& obj,
                    const SphereRegion& region) {
  KktPoint point;
  if (lambda < kLambdaSnap) lambda = 0.0;
  point.x_star = std::move(x);
  point.lambda_star = lambda;
  point.active = lambda > 0.0;
  point.radius = region.radius;
  point.residuals = kkt_residuals(point.x_star, point.lambda_star, obj, region);
  return point;
}

}  // namespace

SphereRegion::SphereRegion(double c) : radius(c) {
  if (!(c > 0.0)) throw InvalidArgument("SphereRegion: radius must be positive");
}

KktResiduals kkt_residuals(const Vector& x, double lambda, const QuadraticObjective& obj,
                           const SphereRegion& region) {
  KktResiduals res;
  const Vector grad = functional_gradient(obj, x) + 2.0 * lambda * x;
  const double gap = x.squaredNorm() - region.radius_sq();
  res.stationarity = grad.lpNorm<Eigen::Infinity>();
  res.feasibility = std::max(0.0, gap);
  res.complementarity = std::abs(lambda * gap);
  res.strict_margin = std::min(lambda, -gap);
  return res;
}

KktResiduals kkt_residuals(const KktPoint& point, const QuadraticObjective& obj,
                           const SphereRegion& region) {
  return kkt_residuals(point.x_star, point.lambda_star, obj, region);
}

KktPoint solve_sphere(const QuadraticObjective& obj, const SphereRegion& region) {
  const int n = obj.n();
  if (obj.B_bar.rows() != n || obj.B_bar.cols() != n)
    throw DimensionMismatch("solve_sphere: objective blocks disagree on n");
  const double c = region.radius;

  Eigen::SelfAdjointEigenSolver<Matrix> eig(obj.B_bar);
  if (eig.info() != Eigen::Success) throw NumericalFailure("solve_sphere: eigendecomposition failed");
  const Vector d = eig.eigenvalues();  // ascending
  const Matrix& v = eig.eigenvectors();
  const Vector g_rot = v.transpose() * (0.5 * obj.beta1_bar);
  const double d_min = d(0);
  const double d_scale = std::max({1.0, std::abs(d(0)), std::abs(d(n - 1))});

  // Interior candidate: stationary point of a positive definite quadratic.
  if (d_min > 0.0) {
    const Vector x_rot = -(g_rot.array() / d.array()).matrix();
    if (x_rot.squaredNorm() <= c * c) return make_point(v * x_rot, 0.0, obj, region);
  }

  // Boundary: lambda* lies in (lambda_lo, infinity) unless the hard case
  // pins it at lambda_lo with a non-unique minimizer.
  const double lambda_lo = std::max(0.0, -d_min);
  const double gap_tol = 1e-10 * d_scale;
  const double g_norm = g_rot.norm();

  double g_degenerate_sq = 0.0;  // gradient mass on the near-singular eigenspace
  double phi_sq_at_lo = 0.0;     // ||x(lambda_lo)||^2 over the regular eigenspace
  for (int i = 0; i < n; ++i) {
    const double shifted = d(i) + lambda_lo;
    if (shifted <= gap_tol)
      g_degenerate_sq += g_rot(i) * g_rot(i);
    else
      phi_sq_at_lo += (g_rot(i) * g_rot(i)) / (shifted * shifted);
  }

  const bool degenerate_space = g_degenerate_sq <= std::pow(1e-12 * std::max(1.0, g_norm), 2);
  if (lambda_lo > 0.0 || d_min <= gap_tol) {
    if (degenerate_space && phi_sq_at_lo < c * c * (1.0 - 1e-10)) {
      // Hard case: the limit solution is strictly inside the ball, so the
      // boundary minimizer gains an arbitrary component in the minimal
      // eigenspace. Theorem-level uniqueness fails; refuse to pick one.
      throw NonUniqueMinimizer(
          "solve_sphere: gradient orthogonal to the minimal eigenspace and the boundary "
          "equation requires lambda = -lambda_min; minimizers are not unique");
    }
    if (degenerate_space && phi_sq_at_lo <= c * c * (1.0 + 1e-10)) {
      // Limit solution lands exactly on the boundary: unique, multiplier at
      // the spectrum edge.
      Vector x_rot = Vector::Zero(n);
      for (int i = 0; i < n; ++i) {
        const double shifted = d(i) + lambda_lo;
        if (shifted > gap_tol) x_rot(i) = -g_rot(i) / shifted;
      }
      Vector x = v * x_rot;
      if (x.norm() > 0.0) x *= c / x.norm();
      return make_point(std::move(x), lambda_lo, obj, region);
    }
  }

  // Secular equation h(lambda) = 1/||x(lambda)|| - 1/c = 0 on (lo, hi];
  // h is increasing, h(lo+) < 0, and phi(hi) <= c by construction.
  double lo = lambda_lo;
  double hi = lambda_lo + g_norm / c;
  if (!(hi > lo)) throw NumericalFailure("solve_sphere: empty secular bracket");

  auto phi_sq_and_deriv = [&](double lambda) {
    double phi_sq = 0.0, dphi_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double shifted = d(i) + lambda;
      const double term = (g_rot(i) * g_rot(i)) / (shifted * shifted);
      phi_sq += term;
      dphi_sq += -2.0 * term / shifted;
    }
    return std::pair{phi_sq, dphi_sq};
  };

  double lambda = 0.5 * (lo + hi);
  double phi = 0.0;
  bool converged = false;
  for (int iter = 0; iter < kMaxSecularIter; ++iter) {
    const auto [phi_sq, dphi_sq] = phi_sq_and_deriv(lambda);
    phi = std::sqrt(phi_sq);
    if (std::abs(phi - c) <= 1e-13 * c) {
      converged = true;
      break;
    }
    if (phi > c)
      lo = lambda;
    else
      hi = lambda;
    const double h = 1.0 / phi - 1.0 / c;
    const double dh = -0.5 * dphi_sq / (phi_sq * phi);
    double next = lambda - h / dh;
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    if (next == lambda) {
      converged = std::abs(phi - c) <= 1e-9 * c;  // bracket exhausted at rounding
      break;
    }
    lambda = next;
  }
  if (!converged) throw NumericalFailure("solve_sphere: secular iteration did not converge");

  Vector x_rot(n);
  for (int i = 0; i < n; ++i) x_rot(i) = -g_rot(i) / (d(i) + lambda);
  Vector x = v * x_rot;
  x *= c / x.norm();  // land exactly on the boundary
  return make_point(std::move(x), lambda, obj, region);
}

}  // namespace rsm
