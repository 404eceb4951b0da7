#pragma once

#include "circumcone/types.hpp"

namespace circumcone {

/// Eigen-decomposition of a real symmetric matrix.
/// Eigenvalues are sorted ascending; column i of `vectors` pairs with
/// `values(i)`.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};

/// Cyclic Jacobi sweeps until the off-diagonal mass is at rounding level.
/// Intended for desk-scale matrices (up to a few dozen rows). Only the upper
/// triangle of `a` is read.
SymmetricEigen jacobi_eigen(const Matrix& a, bool want_vectors = true);

double min_eigenvalue(const Matrix& a);
double max_eigenvalue(const Matrix& a);

}  // namespace circumcone
