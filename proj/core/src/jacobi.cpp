#include "circumcone/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace circumcone {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_sq(const Matrix& a) {
  double off = 0.0;
  for (Eigen::Index q = 1; q < a.rows(); ++q) {
    for (Eigen::Index p = 0; p < q; ++p) off += a(p, q) * a(p, q);
  }
  return off;
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& input, bool want_vectors) {
  if (input.rows() != input.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "jacobi_eigen needs a square matrix");
  }
  const Eigen::Index n = input.rows();
  Matrix a = input.selfadjointView<Eigen::Upper>();
  Matrix v = Matrix::Identity(n, n);

  const double scale = a.squaredNorm();
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_sq(a) <= eps * eps * scale) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (want_vectors) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  if (want_vectors) out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src);
    if (want_vectors) out.vectors.col(k) = v.col(src);
  }
  return out;
}

double min_eigenvalue(const Matrix& a) {
  return jacobi_eigen(a, false).values(0);
}

double max_eigenvalue(const Matrix& a) {
  const Vector values = jacobi_eigen(a, false).values;
  return values(values.size() - 1);
}

}  // namespace circumcone
