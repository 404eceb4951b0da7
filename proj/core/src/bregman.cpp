#include "circumcone/bregman.hpp"

#include "circumcone/admissible.hpp"
#include "circumcone/jacobi.hpp"

#include <cmath>
#include <sstream>

namespace circumcone {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kKappaTol = 1e-12;
constexpr double kAffineOriginTol = 1e-10;

}  // namespace

LegendreFunction LegendreFunction::euclidean() { return LegendreFunction(Euclidean{}); }

LegendreFunction LegendreFunction::pnorm(double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::kConstruction, "p-norm Legendre function needs finite p >= 2");
  }
  return LegendreFunction(PNorm{p});
}

LegendreFunction LegendreFunction::mahalanobis(const Matrix& A) {
  if (A.rows() != A.cols() || A.rows() == 0) {
    throw Error(ErrorKind::kConstruction, "Mahalanobis matrix must be square and nonempty");
  }
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorKind::kConstruction, "Mahalanobis matrix must be symmetric");
  }
  const double lambda_min = min_eigenvalue(A);
  if (!(lambda_min > 1e-10)) {
    std::ostringstream msg;
    msg << "Mahalanobis matrix is not positive definite (lambda_min = " << lambda_min << ")";
    throw Error(ErrorKind::kConstruction, msg.str());
  }
  return LegendreFunction(Mahalanobis{A, A.llt()});
}

double LegendreFunction::value(const Vector& x) const {
  return std::visit(Overloaded{
                        [&](const Euclidean&) { return 0.5 * x.squaredNorm(); },
                        [&](const PNorm& f) { return std::pow(x.norm(), f.p) / f.p; },
                        [&](const Mahalanobis& f) { return 0.5 * x.dot(f.A * x); },
                    },
                    family_);
}

Vector LegendreFunction::grad(const Vector& x) const {
  return std::visit(Overloaded{
                        [&](const Euclidean&) -> Vector { return x; },
                        [&](const PNorm& f) -> Vector {
                          const double norm = x.norm();
                          if (norm == 0.0) return Vector::Zero(x.size());
                          return std::pow(norm, f.p - 2.0) * x;
                        },
                        [&](const Mahalanobis& f) -> Vector { return f.A * x; },
                    },
                    family_);
}

Vector LegendreFunction::grad_dual(const Vector& y) const {
  Vector x = std::visit(Overloaded{
                            [&](const Euclidean&) -> Vector { return y; },
                            [&](const PNorm& f) -> Vector {
                              const double norm = y.norm();
                              if (norm == 0.0) return Vector::Zero(y.size());
                              return std::pow(norm, (2.0 - f.p) / (f.p - 1.0)) * y;
                            },
                            [&](const Mahalanobis& f) -> Vector { return f.factor.solve(y); },
                        },
                        family_);
  if (!x.allFinite()) {
    throw Error(ErrorKind::kDualDomain, "grad h* is not finite at the requested dual point");
  }
  return x;
}

double LegendreFunction::divergence(const Vector& x, const Vector& y) const {
  return value(x) - value(y) - grad(y).dot(x - y);
}

std::string LegendreFunction::label() const {
  return std::visit(Overloaded{
                        [](const Euclidean&) { return std::string("euclidean"); },
                        [](const PNorm& f) {
                          std::ostringstream s;
                          s << "pnorm(" << f.p << ")";
                          return s.str();
                        },
                        [](const Mahalanobis&) { return std::string("mahalanobis"); },
                    },
                    family_);
}

Vector bregman_proj_affine(const LegendreFunction& h, const ConicBase& base) {
  const AffineProjection euclid = project_origin_onto_affine_hull(base.generators());
  if (!(euclid.point.norm() > kAffineOriginTol)) {
    throw Error(ErrorKind::kDegenerateAffine, "aff(B) contains the origin");
  }
  const auto* maha = std::get_if<LegendreFunction::Mahalanobis>(&h.family());
  // Both Euclidean and p-norm divergences from 0 are monotone in ||x||.
  if (maha == nullptr) return euclid.point;

  if (maha->A.rows() != base.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "Mahalanobis matrix does not match the base");
  }
  const Matrix& u = base.generators();
  const Vector anchor = u.col(0);
  if (base.size() == 1) return anchor;
  Matrix diffs(base.dim(), base.size() - 1);
  for (Eigen::Index j = 1; j < base.size(); ++j) diffs.col(j - 1) = u.col(j) - anchor;
  const Matrix reduced = diffs.transpose() * maha->A * diffs;
  if (diffs.cols() > diffs.rows() || !(min_eigenvalue(reduced) > kGramSingularTol)) {
    throw Error(ErrorKind::kDependentBase,
                "V'AV is singular; the generators are affinely dependent");
  }
  const Vector alpha = reduced.llt().solve(-(diffs.transpose() * (maha->A * anchor)));
  return anchor + diffs * alpha;
}

BregmanDirection bregman_direction(const LegendreFunction& h, const ConicBase& base) {
  BregmanDirection out;
  out.c_h = bregman_proj_affine(h, base);
  const Vector dual = h.grad(out.c_h);
  out.d_h = -dual;
  out.kappa = dual.dot(out.c_h);
  if (!(out.kappa > kKappaTol)) {
    throw Error(ErrorKind::kDegenerateAffine, "Bregman margin kappa is not positive");
  }
  return out;
}

bool bregman_ball_check(const BregmanDirection& bd, const ConicBase& base, const Vector& v) {
  if (v.size() != base.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "perturbation does not match the base");
  }
  return (base.generators().transpose() * (bd.d_h + v)).maxCoeff() <= 1e-12;
}

Extended sigma_star_h(const BregmanDirection& bd, const ConicBase& base, const Vector& w) {
  return directional_depth(base, bd.kappa, w).value;
}

Vector mirror_step(const LegendreFunction& h, const Vector& x, const Vector& d_h,
                   const Vector& grad_f, double sigma, double eta) {
  if (!(eta > 0.0)) throw Error(ErrorKind::kContractViolation, "eta must be positive");
  if (!(sigma > 0.0)) throw Error(ErrorKind::kContractViolation, "sigma must be positive");
  if (x.size() != d_h.size() || x.size() != grad_f.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "mirror_step vectors disagree in size");
  }
  return h.grad_dual(h.grad(x) + eta * (d_h - sigma * grad_f));
}

}  // namespace circumcone
