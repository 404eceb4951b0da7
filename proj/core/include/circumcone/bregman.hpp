#pragma once

#include "circumcone/geometry.hpp"
#include "circumcone/types.hpp"

#include <string>
#include <variant>

namespace circumcone {

/// Legendre function normalized so that grad h(0) = 0.
///
/// Three closed-form families are provided:
///   Euclidean     h(x) = 1/2 ||x||^2
///   PNorm(p>=2)   h(x) = 1/p ||x||^p,   grad h(x) = ||x||^(p-2) x
///   Mahalanobis   h(x) = 1/2 x'Ax,      A symmetric positive definite
class LegendreFunction {
 public:
  struct Euclidean {};
  struct PNorm {
    double p;
  };
  struct Mahalanobis {
    Matrix A;
    Eigen::LLT<Matrix> factor;
  };

  static LegendreFunction euclidean();
  /// Throws ConstructionError unless p >= 2.
  static LegendreFunction pnorm(double p);
  /// Throws ConstructionError unless A is symmetric with lambda_min > 1e-10.
  static LegendreFunction mahalanobis(const Matrix& A);

  double value(const Vector& x) const;
  Vector grad(const Vector& x) const;
  /// Inverse of grad (the gradient of the convex conjugate).
  Vector grad_dual(const Vector& y) const;
  /// h(x) - h(y) - <grad h(y), x - y>.
  double divergence(const Vector& x, const Vector& y) const;

  std::string label() const;
  const std::variant<Euclidean, PNorm, Mahalanobis>& family() const { return family_; }

 private:
  explicit LegendreFunction(std::variant<Euclidean, PNorm, Mahalanobis> f)
      : family_(std::move(f)) {}

  std::variant<Euclidean, PNorm, Mahalanobis> family_;
};

/// Bregman direction d_h = -grad h(c_h) with margin kappa = <grad h(c_h), c_h>.
struct BregmanDirection {
  Vector c_h;
  Vector d_h;
  double kappa = 0.0;
};

/// argmin over aff(B) of D_h(x, 0). Throws DegenerateAffine when aff(B)
/// contains the origin and DependentBase when the Mahalanobis system is
/// singular.
Vector bregman_proj_affine(const LegendreFunction& h, const ConicBase& base);

/// Throws DegenerateAffine when kappa <= 1e-12.
BregmanDirection bregman_direction(const LegendreFunction& h, const ConicBase& base);

/// d_h + v in the polar cone, i.e. max_i <d_h + v, u^i> <= 1e-12.
bool bregman_ball_check(const BregmanDirection& bd, const ConicBase& base, const Vector& v);

/// kappa / max_j <w, u^j>, or +inf when that maximum is nonpositive.
Extended sigma_star_h(const BregmanDirection& bd, const ConicBase& base, const Vector& w);

/// grad h*( grad h(x) + eta (d_h - sigma grad_f) ).
Vector mirror_step(const LegendreFunction& h, const Vector& x, const Vector& d_h,
                   const Vector& grad_f, double sigma, double eta);

}  // namespace circumcone
