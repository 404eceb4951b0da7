#include "circumcone/geometry.hpp"

#include "circumcone/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace circumcone {

namespace {

// Relative residual below which a difference vector adds no new direction.
constexpr double kRankTol = 1e-9;

double aperture_of(double norm_sq) {
  return std::acos(std::clamp(std::sqrt(std::max(norm_sq, 0.0)), 0.0, 1.0));
}

CircumDirection make_direction(Vector d, CircumRoute route) {
  CircumDirection out;
  out.norm_sq = d.squaredNorm();
  out.aperture = aperture_of(out.norm_sq);
  out.d = std::move(d);
  out.route = route;
  return out;
}

Matrix difference_vectors(const Matrix& points) {
  const Eigen::Index p = points.cols();
  Matrix diffs(points.rows(), std::max<Eigen::Index>(p - 1, 0));
  for (Eigen::Index j = 1; j < p; ++j) diffs.col(j - 1) = points.col(j) - points.col(0);
  return diffs;
}

// Orthonormal basis of span(columns) by modified Gram-Schmidt with one
// re-orthogonalization pass; columns adding nothing new are dropped.
Matrix orthonormal_span(const Matrix& columns) {
  const Eigen::Index n = columns.rows();
  Matrix basis(n, std::min(n, columns.cols()));
  Eigen::Index rank = 0;
  for (Eigen::Index j = 0; j < columns.cols() && rank < n; ++j) {
    Vector v = columns.col(j);
    const double original = v.norm();
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < rank; ++k) v -= basis.col(k).dot(v) * basis.col(k);
    }
    const double residual = v.norm();
    if (residual <= kRankTol * original) continue;
    basis.col(rank++) = v / residual;
  }
  return basis.leftCols(rank);
}

}  // namespace

ConicBase ConicBase::build(std::span<const Vector> raw) {
  if (raw.empty()) throw Error(ErrorKind::kConstruction, "conic base needs at least one vector");
  const Eigen::Index n = raw.front().size();
  if (n < 1) throw Error(ErrorKind::kConstruction, "ambient dimension must be at least 1");

  Matrix u(n, static_cast<Eigen::Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Vector& v = raw[i];
    if (v.size() != n) {
      std::ostringstream msg;
      msg << "vector " << i << " has dimension " << v.size() << ", expected " << n;
      throw Error(ErrorKind::kDimensionMismatch, msg.str());
    }
    if (!v.allFinite()) {
      throw Error(ErrorKind::kConstruction, "vector " + std::to_string(i) + " is not finite");
    }
    const double norm = v.norm();
    if (norm == 0.0) {
      throw Error(ErrorKind::kConstruction, "vector " + std::to_string(i) + " is zero");
    }
    u.col(static_cast<Eigen::Index>(i)) = v / norm;
  }

  for (Eigen::Index j = 1; j < u.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if ((u.col(i) - u.col(j)).norm() <= kDuplicateTol) {
        std::ostringstream msg;
        msg << "vectors " << i << " and " << j << " span the same ray";
        throw Error(ErrorKind::kConstruction, msg.str());
      }
    }
  }
  return ConicBase(std::move(u));
}

GramMatrix gram(const ConicBase& base) {
  const Matrix& u = base.generators();
  const Eigen::Index p = u.cols();
  Matrix m(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i; j < p; ++j) {
      m(i, j) = u.col(i).dot(u.col(j));
      m(j, i) = m(i, j);
    }
  }
  return GramMatrix{std::move(m)};
}

CircumDirection circum_via_gram(const ConicBase& base) {
  const GramMatrix m = gram(base);
  const double lambda_min = min_eigenvalue(m.entries);
  if (!(lambda_min > kGramSingularTol)) {
    std::ostringstream msg;
    msg << "Gram matrix is singular (smallest eigenvalue " << lambda_min
        << " <= " << kGramSingularTol << "); the generators are linearly dependent";
    throw Error(ErrorKind::kDependentBase, msg.str());
  }
  const Vector ones = Vector::Ones(base.size());
  const Vector m_inv_ones = m.entries.llt().solve(ones);
  const double total = m_inv_ones.sum();

  CircumDirection out;
  out.weights = m_inv_ones / total;
  out.d = -(base.generators() * *out.weights);
  out.norm_sq = 1.0 / total;
  out.aperture = aperture_of(out.norm_sq);
  out.route = CircumRoute::kGram;
  return out;
}

AffineProjection project_origin_onto_affine_hull(const Matrix& points) {
  if (points.cols() < 1) {
    throw Error(ErrorKind::kConstruction, "affine hull of an empty point set");
  }
  const Vector anchor = points.col(0);
  if (points.cols() == 1) return {anchor, 0};

  const Matrix diffs = difference_vectors(points);
  if (diffs.cols() <= diffs.rows()) {
    // Normal equations on the difference-vector Gram matrix.
    const Matrix normal = diffs.transpose() * diffs;
    if (min_eigenvalue(normal) > kGramSingularTol) {
      const Vector alpha = normal.llt().solve(-(diffs.transpose() * anchor));
      return {anchor + diffs * alpha, diffs.cols()};
    }
  }
  const Matrix q = orthonormal_span(diffs);
  Vector r = anchor - q * (q.transpose() * anchor);
  r -= q * (q.transpose() * r);
  return {r, q.cols()};
}

CircumDirection circum_via_projection(const ConicBase& base) {
  AffineProjection proj = project_origin_onto_affine_hull(base.generators());
  return make_direction(-proj.point, CircumRoute::kProjection);
}

CircumDirection circum_via_system(const ConicBase& base) {
  const Matrix& u = base.generators();
  const Eigen::Index p = base.size();
  if (p == 1) return make_direction(-u.col(0), CircumRoute::kSystem);

  const Matrix diffs = difference_vectors(u);
  const Eigen::Index k = p - 1;
  Matrix system(k, k);
  Vector rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) system(i, j) = diffs.col(j).dot(diffs.col(i));
    rhs(i) = 0.5 * diffs.col(i).squaredNorm();
  }
  if (k > base.dim() || !(min_eigenvalue(system) > kGramSingularTol)) {
    throw Error(ErrorKind::kAffinelyDependent,
                "circumcenter system is singular; the generators are affinely dependent");
  }
  const Vector alpha = system.partialPivLu().solve(rhs);
  const Vector center = u.col(0) + diffs * alpha;
  return make_direction(-center, CircumRoute::kSystem);
}

CircumDirection circum(const ConicBase& base) {
  const GramMatrix m = gram(base);
  const SymmetricEigen eig = jacobi_eigen(m.entries, false);
  const double lambda_min = eig.values(0);
  const double lambda_max = eig.values(eig.values.size() - 1);
  CircumDirection out = lambda_min > kGramIllConditionedTol ? circum_via_gram(base)
                                                            : circum_via_projection(base);
  out.gram_condition = lambda_min > 0.0 ? lambda_max / lambda_min
                                        : std::numeric_limits<double>::infinity();
  return out;
}

SpectralBounds spectral_bounds(const GramMatrix& m) {
  const SymmetricEigen eig = jacobi_eigen(m.entries, false);
  const double p = static_cast<double>(m.entries.rows());
  return {eig.values(0) / p, eig.values(eig.values.size() - 1) / p};
}

Aperture aperture_axis(const CircumDirection& c) {
  if (!(c.norm_sq > 1e-12)) {
    throw Error(ErrorKind::kDegenerateDirection,
                "aperture is undefined for d = 0 (the affine hull contains the origin)");
  }
  const double norm = c.d.norm();
  return {-c.d / norm, std::acos(std::clamp(norm, 0.0, 1.0))};
}

}  // namespace circumcone
