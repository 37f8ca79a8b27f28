#pragma once

#include "synalg/element.hpp"

namespace synalg {

struct JacobiResult {
  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns, vectors.col(i) pairs with values(i)
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver with a threshold sweep for small dense symmetric
/// matrices. Converged once the off-diagonal Frobenius mass is at most
/// 1e-14 * ||a||_F; throws kNoConvergence after max_sweeps.
JacobiResult jacobi_eigen(const Matrix& a, int max_sweeps = 100);

}  // namespace synalg
