// SPDX-License-Identifier: Apache-2.0
#include "rsm/design.hpp"

#include <Eigen/SVD>

#include "rsm/basis.hpp"
#include "rsm/errors.hpp"

namespace rsm {

Design build_design(const std::vector<Vector>& points) {
  if (points.empty()) throw EmptyInput("build_design: no runs");
  const int n = static_cast<int>(points.front().size());
  const int p = basis_size(n);
  const int N = static_cast<int>(points.size());
  if (N < p)
    throw RankDeficient("build_design: " + std::to_string(N) + " runs cannot identify " +
                        std::to_string(p) + " coefficients");

  Design d;
  d.n = n;
  d.p = p;
  d.points = points;
  d.X.resize(N, p);
  for (int i = 0; i < N; ++i) {
    if (static_cast<int>(points[i].size()) != n)
      throw DimensionMismatch("build_design: run " + std::to_string(i) + " has dimension " +
                              std::to_string(points[i].size()) + ", expected " + std::to_string(n));
    d.X.row(i) = basis_vector(points[i]).transpose();
  }

  Eigen::JacobiSVD<Matrix> svd(d.X);
  d.sv_max = svd.singularValues()(0);
  d.sv_min = svd.singularValues()(p - 1);
  if (!(d.sv_min > 1e-10 * d.sv_max))
    throw RankDeficient("build_design: design matrix numerically rank deficient (sv ratio " +
                        std::to_string(d.sv_min / d.sv_max) + ")");
  return d;
}

std::vector<Vector> ccd_design(int n, double axial, int n_center) {
  if (n < 1) throw InvalidArgument("ccd_design: need at least one factor");
  if (n > 20) throw InvalidArgument("ccd_design: factorial portion overflows for n > 20");
  if (!(axial > 0.0)) throw InvalidArgument("ccd_design: axial distance must be positive");
  if (n_center < 0) throw InvalidArgument("ccd_design: negative center-point count");

  std::vector<Vector> pts;
  pts.reserve((std::size_t{1} << n) + 2 * n + n_center);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Vector x(n);
    for (int j = 0; j < n; ++j) x(j) = (mask >> j) & 1 ? 1.0 : -1.0;
    pts.push_back(x);
  }
  for (int j = 0; j < n; ++j) {
    for (double s : {-1.0, 1.0}) {
      Vector x = Vector::Zero(n);
      x(j) = s * axial;
      pts.push_back(x);
    }
  }
  for (int k = 0; k < n_center; ++k) pts.push_back(Vector::Zero(n));
  return pts;
}

Design replicate_design(const Design& base, int times) {
  if (times < 1) throw InvalidArgument("replicate_design: times must be >= 1");
  std::vector<Vector> pts;
  pts.reserve(base.points.size() * static_cast<std::size_t>(times));
  for (int t = 0; t < times; ++t)
    pts.insert(pts.end(), base.points.begin(), base.points.end());
  return build_design(pts);
}

}  // namespace rsm
