#pragma once

// Test-only helpers. The reference computations here use Eigen's dense
// decompositions directly and never call into the routines they check.

#include "circumcone/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cstdint>
#include <random>
#include <vector>

namespace circumcone::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Vector gaussian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

inline Vector unit(Eigen::Index n, std::mt19937_64& rng) {
  Vector v = gaussian(n, rng);
  return v / v.norm();
}

inline int uniform_int(int lo, int hi, std::mt19937_64& rng) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform(double lo, double hi, std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// p Gaussian vectors in R^n; independent with probability one when p <= n.
inline std::vector<Vector> random_raw(Eigen::Index n, Eigen::Index p, std::mt19937_64& rng) {
  std::vector<Vector> out;
  for (Eigen::Index i = 0; i < p; ++i) out.push_back(gaussian(n, rng));
  return out;
}

/// Projection of the origin onto aff(columns) by a complete orthogonal
/// decomposition least-squares solve.
inline Vector reference_projection(const Matrix& points) {
  const Vector anchor = points.col(0);
  if (points.cols() == 1) return anchor;
  Matrix diffs(points.rows(), points.cols() - 1);
  for (Eigen::Index j = 1; j < points.cols(); ++j) diffs.col(j - 1) = points.col(j) - anchor;
  const Vector alpha = diffs.completeOrthogonalDecomposition().solve(-anchor);
  return anchor + diffs * alpha;
}

inline Vector reference_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

inline Matrix columns(const std::vector<Vector>& vs) {
  Matrix m(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vs[i];
  return m;
}

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace circumcone::testing
