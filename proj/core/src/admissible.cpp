#include "circumcone/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace circumcone {

namespace {

void check_dim(const ConicBase& base, const Vector& v, const char* what) {
  if (v.size() != base.dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + " has dimension " + std::to_string(v.size()) +
                    ", base lives in R^" + std::to_string(base.dim()));
  }
}

// Lowest index attaining the maximum.
std::pair<double, Eigen::Index> max_inner(const ConicBase& base, const Vector& v) {
  const Vector products = base.generators().transpose() * v;
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < products.size(); ++i) {
    if (products(i) > products(best)) best = i;
  }
  return {products(best), best};
}

}  // namespace

double admissible_margin(const ConicBase& base, double norm_sq, const Vector& v) {
  check_dim(base, v, "perturbation");
  return norm_sq - max_inner(base, v).first;
}

DepthResult directional_depth(const ConicBase& base, double norm_sq, const Vector& w) {
  check_dim(base, w, "direction");
  if (w.isZero(0.0)) throw Error(ErrorKind::kZeroDirection, "directional depth of w = 0");
  const auto [support, index] = max_inner(base, w);
  if (support <= 0.0) return {Extended::infinity(), std::nullopt};
  return {Extended::finite(norm_sq / support), index};
}

Extended angular_depth_bound(double norm_sq, double phi) {
  if (!(norm_sq > 0.0 && norm_sq <= 1.0 + 1e-12)) {
    throw Error(ErrorKind::kContractViolation, "angular bound needs norm_sq in (0, 1]");
  }
  norm_sq = std::min(norm_sq, 1.0);
  if (!(phi >= 0.0 && phi <= std::numbers::pi)) {
    throw Error(ErrorKind::kContractViolation, "angular bound needs phi in [0, pi]");
  }
  const double theta = std::acos(std::sqrt(norm_sq));
  if (phi - theta >= std::numbers::pi / 2) return Extended::infinity();
  const double c = std::cos(phi - theta);
  if (c <= 0.0) return Extended::infinity();
  return Extended::finite(norm_sq / c);
}

std::vector<Vector> contact_points(const ConicBase& base, double norm_sq) {
  if (!(norm_sq > 0.0)) {
    throw Error(ErrorKind::kContractViolation, "contact points need norm_sq > 0");
  }
  std::vector<Vector> points;
  points.reserve(static_cast<std::size_t>(base.size()));
  for (Eigen::Index i = 0; i < base.size(); ++i) points.push_back(norm_sq * base.generator(i));
  return points;
}

}  // namespace circumcone
