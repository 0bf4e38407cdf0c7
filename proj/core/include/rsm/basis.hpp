// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rsm/types.hpp"

namespace rsm {

/// Number of second-order basis terms for n factors: 1 + n + n(n+1)/2.
int basis_size(int n);

/// Second-order regression basis at x, laid out as
///   (1, x1..xn, x1^2..xn^2, x1x2, x1x3, ..., x_{n-1}x_n)
/// with cross terms in lexicographic (i<j) order. Every coefficient vector,
/// design-matrix row, and vec index in this library assumes this order.
Vector basis_vector(const Vector& x);

/// Jacobian M(x) of the basis row, as the n x p block matrix
///   [0 | I_n | 2 diag(x) | C_1 | ... | C_{n-1}]
/// where the C_i blocks hold the cross-term derivatives.
Matrix basis_jacobian(const Vector& x);

}  // namespace rsm
