// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "rsm/errors.hpp"
#include "rsm/solver.hpp"
#include "support/oracles.hpp"

using rsm::Matrix;
using rsm::Vector;

namespace {

rsm::QuadraticObjective make_objective(double beta0, const Vector& beta1, const Matrix& b) {
  rsm::QuadraticObjective obj;
  obj.beta0_bar = beta0;
  obj.beta1_bar = beta1;
  obj.B_bar = b;
  return obj;
}

rsm::QuadraticObjective random_objective(std::mt19937_64& gen, int n, int r) {
  const auto inst = oracles::random_instance(gen, n, r, 1.0);
  return rsm::weighted_objective(inst.weights, inst.coefficients);
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("interior optimum") {
  const auto obj = make_objective(0.0, Vector::Constant(1, -2.0), Matrix::Constant(1, 1, 1.0));
  const auto point = rsm::solve_sphere(obj, rsm::SphereRegion(2.0));
  CHECK(point.x_star(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(point.lambda_star == 0.0);
  CHECK(!point.active);
  CHECK(point.residuals.stationarity <= 1e-12);
}

TEST_CASE("boundary optimum with closed-form multiplier") {
  const auto obj = make_objective(0.0, Vector::Constant(1, -2.0), Matrix::Constant(1, 1, 1.0));
  const auto point = rsm::solve_sphere(obj, rsm::SphereRegion(0.5));
  CHECK(point.x_star(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(point.lambda_star == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(point.active);

  const auto grid = oracles::grid_minimum(obj, 0.5, 1e-4);
  CHECK(rsm::evaluate_functional(obj, point.x_star) <= grid.value + 1e-7);
}

TEST_CASE("hard case raises NonUniqueMinimizer") {
  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 1.0;
  b(1, 1) = -1.0;
  const auto obj = make_objective(0.0, Vector::Zero(2), b);
  CHECK_THROWS_AS(rsm::solve_sphere(obj, rsm::SphereRegion(1.0)), rsm::NonUniqueMinimizer);

  // the grid oracle indeed sees two global minimizers at (0, +-1)
  const auto grid = oracles::grid_minimum(obj, 1.0, 1e-2);
  CHECK(grid.value == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(std::abs(grid.argmin(0)) <= 1e-9);

  // flat directions of a singular PSD Hessian are non-unique as well
  Matrix flat = Matrix::Zero(2, 2);
  flat(0, 0) = 1.0;
  Vector g(2);
  g << -2.0, 0.0;
  CHECK_THROWS_AS(rsm::solve_sphere(make_objective(0.0, g, flat), rsm::SphereRegion(5.0)),
                  rsm::NonUniqueMinimizer);
}

TEST_CASE("kkt_residuals") {
  const auto obj = make_objective(0.0, Vector::Constant(1, -2.0), Matrix::Constant(1, 1, 1.0));
  const rsm::SphereRegion region(0.5);
  const auto point = rsm::solve_sphere(obj, region);
  const auto res = rsm::kkt_residuals(point, obj, region);
  CHECK(res.stationarity <= 1e-10);
  CHECK(res.feasibility <= 1e-10);
  CHECK(res.complementarity <= 1e-10);
  CHECK(std::abs(res.strict_margin) <= 1e-10);

  // zero candidate: stationarity equals the gradient norm
  Vector beta1(2);
  beta1 << 0.7, -0.3;
  const auto obj2 = make_objective(0.0, beta1, Matrix::Identity(2, 2));
  const auto at_zero = rsm::kkt_residuals(Vector::Zero(2), 0.0, obj2, rsm::SphereRegion(1.0));
  CHECK(at_zero.stationarity == doctest::Approx(0.7).epsilon(1e-15));

  // perturbation sweep: residual grows linearly in the displacement
  std::mt19937_64 gen(7);
  std::normal_distribution<double> dir(0.0, 1.0);
  const double h = 1e-4;
  double max_resid = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    Vector delta(1);
    delta << dir(gen);
    delta *= h / delta.norm();
    const auto pres = rsm::kkt_residuals(point.x_star + delta, point.lambda_star, obj, region);
    max_resid = std::max(max_resid, pres.stationarity);
    CHECK(pres.stationarity <= 10.0 * h);
  }
  CHECK(max_resid >= 0.1 * h);
}

TEST_CASE("random instances satisfy the KKT certificates") {
  std::mt19937_64 gen(101);
  std::uniform_int_distribution<int> pick_n(1, 6), pick_r(1, 4), pick_c(0, 2);
  const double radii[] = {0.5, 1.0, 2.0};
  for (int rep = 0; rep < 200; ++rep) {
    const int n = pick_n(gen);
    const auto obj = random_objective(gen, n, pick_r(gen));
    const rsm::SphereRegion region(radii[pick_c(gen)]);
    rsm::KktPoint point;
    try {
      point = rsm::solve_sphere(obj, region);
    } catch (const rsm::NonUniqueMinimizer&) {
      continue;  // measure-zero; tolerated if it ever fires
    }
    CHECK(point.lambda_star >= 0.0);
    CHECK(point.residuals.stationarity <=
          1e-10 * (1.0 + obj.beta1_bar.norm()));
    CHECK(point.residuals.feasibility <= 1e-12);
    CHECK(point.residuals.complementarity <= 1e-10);
    CHECK(point.x_star.norm() <= region.radius * (1.0 + 1e-12));
    if (!point.active) CHECK(point.lambda_star == 0.0);

    Eigen::SelfAdjointEigenSolver<Matrix> eig(
        2.0 * obj.B_bar + 2.0 * point.lambda_star * Matrix::Identity(n, n));
    const double b_norm = obj.B_bar.norm();
    CHECK(eig.eigenvalues()(0) >= -1e-10 * std::max(1.0, b_norm));
  }
}

TEST_CASE("grid oracle optimality for n <= 2") {
  std::mt19937_64 gen(211);
  std::uniform_int_distribution<int> pick_n(1, 2), pick_r(1, 3), pick_c(0, 2);
  const double radii[] = {0.5, 1.0, 2.0};
  for (int rep = 0; rep < 20; ++rep) {
    const int n = pick_n(gen);
    const auto obj = random_objective(gen, n, pick_r(gen));
    const double c = radii[pick_c(gen)];
    const auto point = rsm::solve_sphere(obj, rsm::SphereRegion(c));
    const auto grid = oracles::grid_minimum(obj, c, 1e-2);
    const double f_star = rsm::evaluate_functional(obj, point.x_star);
    CHECK(f_star <= grid.value + 1e-3);
    // sandwich: the grid minimum is within L*h*sqrt(n) of the true optimum
    const double lip = obj.beta1_bar.norm() + 2.0 * obj.B_bar.norm() * c;
    CHECK(grid.value <= f_star + lip * 1e-2 * std::sqrt(2.0) + 1e-12);
  }
}

TEST_CASE("objective value is monotone in the radius") {
  std::mt19937_64 gen(307);
  for (int rep = 0; rep < 30; ++rep) {
    const auto obj = random_objective(gen, 3, 2);
    double previous = std::numeric_limits<double>::infinity();
    for (double c : {0.5, 1.0, 2.0}) {
      const auto point = rsm::solve_sphere(obj, rsm::SphereRegion(c));
      const double f = rsm::evaluate_functional(obj, point.x_star);
      CHECK(f <= previous + 1e-12);
      previous = f;
    }
  }
}

}  // TEST_SUITE
