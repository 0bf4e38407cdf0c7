// SPDX-License-Identifier: Apache-2.0
#include "rsm/basis.hpp"

#include "rsm/errors.hpp"

namespace rsm {

int basis_size(int n) {
  if (n < 1) throw InvalidArgument("basis_size: need at least one factor");
  return 1 + n + n * (n + 1) / 2;
}

Vector basis_vector(const Vector& x) {
  const int n = static_cast<int>(x.size());
  const int p = basis_size(n);
  Vector z(p);
  z(0) = 1.0;
  z.segment(1, n) = x;
  z.segment(1 + n, n) = x.array().square();
  int idx = 1 + 2 * n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) z(idx++) = x(i) * x(j);
  return z;
}

Matrix basis_jacobian(const Vector& x) {
  const int n = static_cast<int>(x.size());
  const int p = basis_size(n);
  Matrix m = Matrix::Zero(n, p);
  // [0 | I_n | 2 diag(x) | C_1 ... C_{n-1}]
  m.block(0, 1, n, n) = Matrix::Identity(n, n);
  m.block(0, 1 + n, n, n) = (2.0 * x).asDiagonal();
  int col = 1 + 2 * n;
  for (int i = 0; i < n; ++i) {
    // C block for pairs (i, j), j > i: row i carries (x_{i+1}..x_n),
    // row j carries x_i on the matching column.
    for (int j = i + 1; j < n; ++j) {
      m(i, col) = x(j);
      m(j, col) = x(i);
      ++col;
    }
  }
  return m;
}

}  // namespace rsm
