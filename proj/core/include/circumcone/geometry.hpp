#pragma once

#include "circumcone/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace circumcone {

/// Gram eigenvalue at or below which a base is treated as linearly dependent.
inline constexpr double kGramSingularTol = 1e-10;
/// Gram eigenvalue below which circum() prefers the projection route.
inline constexpr double kGramIllConditionedTol = 1e-6;
/// Two normalized generators closer than this are duplicates.
inline constexpr double kDuplicateTol = 1e-12;

/// Normalized conic base: p unit generators of a polyhedral cone in R^n,
/// stored as the columns of an n x p matrix.
class ConicBase {
 public:
  /// Normalizes every vector to unit length. Rejects empty input, zero or
  /// non-finite vectors, mixed dimensions and duplicate directions.
  static ConicBase build(std::span<const Vector> raw);

  Eigen::Index dim() const { return generators_.rows(); }
  Eigen::Index size() const { return generators_.cols(); }
  const Matrix& generators() const { return generators_; }
  Vector generator(Eigen::Index i) const { return generators_.col(i); }

 private:
  explicit ConicBase(Matrix generators) : generators_(std::move(generators)) {}

  Matrix generators_;
};

inline ConicBase build_base(std::span<const Vector> raw) {
  return ConicBase::build(raw);
}

/// M_ij = <u^i, u^j>, exactly symmetric.
struct GramMatrix {
  Matrix entries;
};

GramMatrix gram(const ConicBase& base);

enum class CircumRoute { kGram, kProjection, kSystem };

/// Circumcentric direction d = -proj_{aff(B)}(0) of a conic base.
struct CircumDirection {
  Vector d;
  double norm_sq = 0.0;
  /// Affine weights of the circumcenter, sum 1. Gram route only.
  std::optional<Vector> weights;
  /// arccos ||d|| in [0, pi/2].
  double aperture = 0.0;
  CircumRoute route = CircumRoute::kProjection;
  /// lambda_max / lambda_min of the Gram matrix, when circum() looked at it.
  std::optional<double> gram_condition;
};

/// d = -(1' M^-1 1)^-1 sum_i (M^-1 1)_i u^i. Throws DependentBase when
/// lambda_min(M) <= kGramSingularTol.
CircumDirection circum_via_gram(const ConicBase& base);

/// d = -proj_{aff(B)}(0) by least squares; works for dependent bases and
/// returns d = 0 when the affine hull contains the origin.
CircumDirection circum_via_projection(const ConicBase& base);

/// Solves the (p-1)x(p-1) circumcenter system; throws AffinelyDependent when
/// the system is singular.
CircumDirection circum_via_system(const ConicBase& base);

/// Default route: Gram formula when lambda_min(M) > kGramIllConditionedTol,
/// projection otherwise. Records the Gram condition number.
CircumDirection circum(const ConicBase& base);

/// Orthogonal projection of the origin onto the affine hull of the columns of
/// `points`. Duplicate and affinely dependent columns are allowed.
struct AffineProjection {
  Vector point;
  /// Dimension of the affine hull that was found.
  Eigen::Index rank = 0;
};

AffineProjection project_origin_onto_affine_hull(const Matrix& points);

struct SpectralBounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// (lambda_min(M)/p, lambda_max(M)/p); brackets ||d||^2 for independent bases.
SpectralBounds spectral_bounds(const GramMatrix& m);

struct Aperture {
  Vector axis;
  double theta = 0.0;
};

/// Axis a = -d/||d|| and half-aperture theta = arccos ||d||.
/// Throws DegenerateDirection when d = 0.
Aperture aperture_axis(const CircumDirection& c);

}  // namespace circumcone
