// SPDX-License-Identifier: Apache-2.0
#include "rsm/montecarlo.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "rsm/distributions.hpp"
#include "rsm/errors.hpp"
#include "rsm/sensitivity.hpp"

namespace rsm {

namespace {

constexpr double kDegeneracyGuard = 1e-8;

// Lower-triangular factor L with sigma = L L'; tolerates semidefinite
// matrices (exact Cholesky first, eigenvalue clamping as fallback).
Matrix psd_factor(const Matrix& sigma) {
  if (sigma.rows() != sigma.cols()) throw DimensionMismatch("sample_errors: sigma must be square");
  if (!sigma.isApprox(sigma.transpose(), 1e-12))
    throw NotPositiveDefinite("sample_errors: sigma is not symmetric");
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() == Eigen::Success) return llt.matrixL();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma);
  const Vector& d = eig.eigenvalues();
  const double scale = std::max(1.0, std::abs(d(d.size() - 1)));
  if (d(0) < -1e-12 * scale)
    throw NotPositiveDefinite("sample_errors: sigma has negative eigenvalue " +
                              std::to_string(d(0)));
  return eig.eigenvectors() * d.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

Matrix sample_errors_with_factor(const Matrix& factor, int n_rows, RandomStream& rng) {
  const int r = static_cast<int>(factor.rows());
  Matrix z(n_rows, r);
  for (int i = 0; i < n_rows; ++i)
    for (int j = 0; j < r; ++j) z(i, j) = rng.normal();
  return z * factor.transpose();
}

std::string failure_reason(const Error& e) {
  if (dynamic_cast<const NonUniqueMinimizer*>(&e)) return "non_unique_minimizer";
  if (dynamic_cast<const DegenerateComplementarity*>(&e)) return "degenerate_complementarity";
  if (dynamic_cast<const NotPositiveDefinite*>(&e)) return "not_positive_definite";
  if (dynamic_cast<const NumericalFailure*>(&e)) return "numerical_failure";
  if (dynamic_cast<const RankDeficient*>(&e)) return "rank_deficient";
  if (dynamic_cast<const InsufficientDof*>(&e)) return "insufficient_dof";
  return "error";
}

}  // namespace

Matrix sample_errors(const Matrix& sigma, int n_rows, RandomStream& rng) {
  if (n_rows < 0) throw InvalidArgument("sample_errors: negative row count");
  return sample_errors_with_factor(psd_factor(sigma), n_rows, rng);
}

std::optional<MardiaStatistics> mardia_statistics(const Matrix& samples) {
  const int m = static_cast<int>(samples.rows());
  const int n = static_cast<int>(samples.cols());
  if (m < n + 2) return std::nullopt;

  const RowVector mean = samples.colwise().mean();
  const Matrix centered = samples.rowwise() - mean;
  const Matrix cov = centered.transpose() * centered / static_cast<double>(m);
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success) return std::nullopt;

  // b1 = mean over all pairs of (y_i' S^{-1} y_j)^3, exploiting symmetry;
  // b2 = mean of squared Mahalanobis norms.
  const Matrix w = llt.solve(centered.transpose()).transpose();  // m x n
  double b1 = 0.0;
  double b2 = 0.0;
  for (int i = 0; i < m; ++i) {
    const double dii = w.row(i).dot(centered.row(i));
    b1 += dii * dii * dii;
    b2 += dii * dii;
    for (int j = i + 1; j < m; ++j) {
      const double dij = w.row(i).dot(centered.row(j));
      b1 += 2.0 * dij * dij * dij;
    }
  }
  b1 /= static_cast<double>(m) * m;
  b2 /= static_cast<double>(m);

  MardiaStatistics stats;
  stats.skewness = m * b1 / 6.0;
  stats.skewness_dof = n * (n + 1) * (n + 2) / 6.0;
  stats.kurtosis = b2;
  stats.kurtosis_mean = static_cast<double>(n) * (n + 2);
  stats.kurtosis_stddev = std::sqrt(8.0 * n * (n + 2) / static_cast<double>(m));
  return stats;
}

SimulationResult run_simulation(const SimulationConfig& config) {
  if (config.replicates < 1) throw InvalidArgument("run_simulation: need at least one replicate");
  const Design& design = config.design;
  const int n = design.n;
  const int big_n = design.runs();
  if (config.truth.n != n)
    throw DimensionMismatch("run_simulation: truth and design disagree on factor count");
  if (config.weights.r() != config.truth.r())
    throw DimensionMismatch("run_simulation: weights do not match response count");
  if (config.sigma.rows() != config.truth.r())
    throw DimensionMismatch("run_simulation: sigma does not match response count");

  const Matrix noise_factor = psd_factor(config.sigma);
  const LeastSquaresEngine engine(design);
  const double guard = kDegeneracyGuard * std::max(1.0, config.region.radius_sq());

  // Baseline solve at the ground truth; the asymptotic reference Xi is
  // evaluated there with the true Sigma.
  KktPoint base;
  Matrix xi_reference;
  try {
    base = solve_sphere(weighted_objective(config.weights, config.truth), config.region);
    if (base.active ? base.lambda_star <= guard : base.slack() <= guard)
      throw TruthDegenerate("run_simulation: truth optimum is not strictly complementary");
    const LagrangianBlocks blocks = lagrangian_blocks(
        weighted_objective(config.weights, config.truth), config.weights, base);
    const SensitivityJacobian jac = solution_jacobian(blocks, base.active);
    const CoefficientCovariance theta =
        coefficient_covariance(config.sigma, engine.xtx_inv(), big_n);
    xi_reference = critical_point_covariance(jac, theta).xi;
  } catch (const TruthDegenerate&) {
    throw;
  } catch (const Error& e) {
    throw TruthDegenerate(std::string("run_simulation: baseline solve failed: ") + e.what());
  }

  const double z = normal_quantile(1.0 - config.alpha / 2.0);
  const int m = config.replicates;

  // interval half-widths from the asymptotic law at truth
  Vector half_reference(n);
  for (int j = 0; j < n; ++j)
    half_reference(j) =
        z * std::sqrt(std::max(0.0, xi_reference(j, j) / static_cast<double>(big_n)));

  // Pre-assigned output slots keep aggregation independent of the schedule.
  Matrix all_x = Matrix::Zero(m, n);
  std::vector<std::uint8_t> ok(static_cast<std::size_t>(m), 0);
  std::vector<std::uint8_t> covered(static_cast<std::size_t>(m) * n, 0);
  std::vector<std::uint8_t> covered_plugin(static_cast<std::size_t>(m) * n, 0);
  std::vector<std::string> reasons(static_cast<std::size_t>(m));

  auto worker = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      try {
        RandomStream rng(derive_stream_seed(config.seed, static_cast<std::uint64_t>(i)));
        const Matrix y = design.X * config.truth.B +
                         sample_errors_with_factor(noise_factor, big_n, rng);
        const FitResult fitted = engine.fit(y);
        const QuadraticObjective obj = weighted_objective(config.weights, fitted.coefficients);
        const KktPoint point = solve_sphere(obj, config.region);
        const LagrangianBlocks blocks = lagrangian_blocks(obj, config.weights, point);
        const SensitivityJacobian jac = solution_jacobian(blocks, point.active);
        const CoefficientCovariance theta = coefficient_covariance(fitted, big_n);
        const AsymptoticReport report = critical_point_covariance(jac, theta);
        all_x.row(i) = point.x_star.transpose();
        for (int j = 0; j < n; ++j) {
          const double deviation = std::abs(base.x_star(j) - point.x_star(j));
          const double half_plugin = z * std::sqrt(std::max(0.0, report.cov_xstar(j, j)));
          // Slack absorbs roundoff when intervals collapse to a point in
          // the noiseless limit.
          const double slack = 1e-9 * (1.0 + std::abs(base.x_star(j)));
          covered[static_cast<std::size_t>(i) * n + j] =
              deviation <= half_reference(j) + slack ? 1 : 0;
          covered_plugin[static_cast<std::size_t>(i) * n + j] =
              deviation <= half_plugin + slack ? 1 : 0;
        }
        ok[static_cast<std::size_t>(i)] = 1;
      } catch (const Error& e) {
        reasons[static_cast<std::size_t>(i)] = failure_reason(e);
      } catch (const std::exception&) {
        reasons[static_cast<std::size_t>(i)] = "error";
      }
    }
  };

  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, m);
  if (threads <= 1) {
    worker(0, m);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    const int chunk = (m + threads - 1) / threads;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(worker, t * chunk, std::min(m, (t + 1) * chunk));
    for (auto& th : pool) th.join();
  }

  SimulationResult result;
  result.replicates = m;
  result.design_runs = big_n;
  result.alpha = config.alpha;
  result.x_star_truth = base.x_star;
  result.xi_reference = xi_reference;

  int successes = 0;
  for (int i = 0; i < m; ++i) successes += ok[static_cast<std::size_t>(i)];
  result.samples.resize(successes, n);
  Vector cover_counts = Vector::Zero(n);
  Vector plugin_counts = Vector::Zero(n);
  int row = 0;
  for (int i = 0; i < m; ++i) {
    if (!ok[static_cast<std::size_t>(i)]) {
      result.failures.count += 1;
      result.failures.reasons[reasons[static_cast<std::size_t>(i)]] += 1;
      continue;
    }
    result.samples.row(row++) = all_x.row(i);
    for (int j = 0; j < n; ++j) {
      cover_counts(j) += covered[static_cast<std::size_t>(i) * n + j];
      plugin_counts(j) += covered_plugin[static_cast<std::size_t>(i) * n + j];
    }
  }
  result.coverage = successes > 0 ? (cover_counts / successes).eval() : Vector::Zero(n);
  result.coverage_plugin =
      successes > 0 ? (plugin_counts / successes).eval() : Vector::Zero(n);

  Matrix second_moment = Matrix::Zero(n, n);
  for (int i = 0; i < successes; ++i) {
    const Vector dev = result.samples.row(i).transpose() - base.x_star;
    second_moment += dev * dev.transpose();
  }
  result.empirical_cov = successes > 0
                             ? (second_moment * (static_cast<double>(big_n) / successes)).eval()
                             : second_moment;
  result.mardia = mardia_statistics(result.samples);
  return result;
}

ComparisonRecord empirical_vs_asymptotic(const SimulationResult& result) {
  const int successes = result.successes();
  if (successes < 100)
    throw TooFewReplicates("empirical_vs_asymptotic: " + std::to_string(successes) +
                           " successful replicates, need at least 100");
  const int n = static_cast<int>(result.samples.cols());

  Matrix second_moment = Matrix::Zero(n, n);
  for (int i = 0; i < successes; ++i) {
    const Vector dev = result.samples.row(i).transpose() - result.x_star_truth;
    second_moment += dev * dev.transpose();
  }
  const Matrix empirical =
      second_moment * (static_cast<double>(result.design_runs) / successes);

  ComparisonRecord record;
  const double ref_norm = result.xi_reference.norm();
  record.frobenius_rel_error = ref_norm > 0.0
                                   ? (empirical - result.xi_reference).norm() / ref_norm
                                   : empirical.norm();
  record.coverage = result.coverage;
  record.coverage_plugin = result.coverage_plugin;
  record.mardia = mardia_statistics(result.samples);
  record.successes = successes;
  record.failures = result.failures.count;
  return record;
}

}  // namespace rsm
