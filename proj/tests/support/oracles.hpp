// SPDX-License-Identifier: Apache-2.0
//
// Test-side oracles, deliberately independent of the library code paths
// they check: finite differences, grid search, erf-based distribution
// functions, brute-force dominance, and dense LU inversion.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "rsm/basis.hpp"
#include "rsm/regression.hpp"
#include "rsm/scalarize.hpp"
#include "rsm/types.hpp"

namespace oracles {

using rsm::Matrix;
using rsm::Vector;

// --- finite differences -----------------------------------------------

inline Matrix fd_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x,
                          double h) {
  const Vector f0 = f(x);
  Matrix jac(x.size(), f0.size());  // rows follow x, columns follow f
  Vector xp = x;
  for (int i = 0; i < x.size(); ++i) {
    xp(i) = x(i) + h;
    const Vector fp = f(xp);
    xp(i) = x(i) - h;
    const Vector fm = f(xp);
    xp(i) = x(i);
    jac.row(i) = ((fp - fm) / (2.0 * h)).transpose();
  }
  return jac;
}

// --- grid search over the ball (n <= 2) --------------------------------

struct GridMin {
  double value = std::numeric_limits<double>::infinity();
  Vector argmin;
};

inline GridMin grid_minimum(const rsm::QuadraticObjective& obj, double radius, double step) {
  GridMin best;
  const int n = obj.n();
  const long k = std::lround(radius / step);
  if (n == 1) {
    for (long i = -k; i <= k; ++i) {
      Vector x(1);
      x(0) = static_cast<double>(i) * step;
      const double v = rsm::evaluate_functional(obj, x);
      if (v < best.value) {
        best.value = v;
        best.argmin = x;
      }
    }
    return best;
  }
  for (long i = -k; i <= k; ++i) {
    for (long j = -k; j <= k; ++j) {
      Vector x(2);
      x << static_cast<double>(i) * step, static_cast<double>(j) * step;
      if (x.squaredNorm() > radius * radius) continue;
      const double v = rsm::evaluate_functional(obj, x);
      if (v < best.value) {
        best.value = v;
        best.argmin = x;
      }
    }
  }
  return best;
}

// --- distribution oracles built on std::erf ----------------------------

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double normal_quantile(double q) {
  double lo = -42.0, hi = 42.0;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < q)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13) break;
  }
  return 0.5 * (lo + hi);
}

// Regularized lower gamma at half-integer order via the erf base case and
// the recurrence P(a+1, x) = P(a, x) - x^a e^{-x} / Gamma(a+1).
inline double chi_squared_cdf(double x, int dof) {
  if (x <= 0.0) return 0.0;
  const double t = x / 2.0;
  double a, p;
  if (dof % 2 == 1) {
    a = 0.5;
    p = std::erf(std::sqrt(t));
  } else {
    a = 1.0;
    p = 1.0 - std::exp(-t);
  }
  while (2.0 * a < dof) {
    p -= std::exp(a * std::log(t) - t - std::lgamma(a + 1.0));
    a += 1.0;
  }
  return p;
}

inline double chi_squared_quantile(double q, int dof) {
  double lo = 0.0, hi = 16.0 + 4.0 * dof;
  while (chi_squared_cdf(hi, dof) < q) hi *= 2.0;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chi_squared_cdf(mid, dof) < q)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

// --- brute-force Pareto dominance --------------------------------------

inline std::vector<int> pareto_bruteforce(const std::vector<Vector>& candidates) {
  std::vector<int> kept;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < candidates.size() && !dominated; ++j) {
      if (j == i) continue;
      bool leq = true, neq = false;
      for (int t = 0; t < candidates[i].size(); ++t) {
        if (candidates[j](t) > candidates[i](t)) leq = false;
        if (candidates[j](t) != candidates[i](t)) neq = true;
      }
      dominated = leq && neq;
    }
    if (!dominated) kept.push_back(static_cast<int>(i));
  }
  return kept;
}

// --- dense linear algebra routes ---------------------------------------

inline Matrix dense_inverse(const Matrix& m) {
  return Eigen::FullPivLU<Matrix>(m).inverse();
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Hessian of z'(x) v summed from the second derivatives of each monomial.
inline Matrix basis_combination_hessian(const Vector& v, int n) {
  Matrix h = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) h(i, i) += 2.0 * v(1 + n + i);
  int idx = 1 + 2 * n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      h(i, j) += v(idx);
      h(j, i) += v(idx);
      ++idx;
    }
  }
  return h;
}

// --- random instances ---------------------------------------------------

struct RandomInstance {
  rsm::CoefficientMatrix coefficients;
  rsm::WeightVector weights;
  double radius = 1.0;
};

inline RandomInstance random_instance(std::mt19937_64& gen, int n, int r, double radius) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Matrix b(rsm::basis_size(n), r);
  for (int j = 0; j < b.rows(); ++j)
    for (int k = 0; k < r; ++k) b(j, k) = unif(gen);
  std::exponential_distribution<double> expo(1.0);
  Vector w(r);
  for (int k = 0; k < r; ++k) w(k) = expo(gen) + 1e-3;
  w /= w.sum();
  return RandomInstance{rsm::CoefficientMatrix(b, n), rsm::WeightVector(w), radius};
}

}  // namespace oracles
