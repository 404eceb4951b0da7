#pragma once

#include "circumcone/geometry.hpp"
#include "circumcone/types.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace circumcone {

/// Activity tolerance; scaled by (1 + magnitude of the constraint's terms).
inline constexpr double kActivityTol = 1e-9;

struct ValueGrad {
  double value = 0.0;
  Vector gradient;
};

/// Convex constraint g(x) <= 0 with an evaluation callback.
struct SmoothConstraint {
  std::string label;
  std::function<ValueGrad(const Vector&)> eval;
};

/// Indices of constraints with g_j(x) >= -tol. Throws InfeasiblePoint when
/// some g_j(x) > tol.
std::vector<std::size_t> active_set(std::span<const SmoothConstraint> constraints,
                                    const Vector& x, double tol = kActivityTol);

/// Normalized active gradients with their circumcentric direction.
struct ActiveCone {
  /// One label per generator of `base` (duplicates merged into the first).
  std::vector<std::string> labels;
  ConicBase base;
  CircumDirection circ;
};

/// Normalizes, merges duplicate directions and computes d (Gram route with
/// projection fallback). Throws on an empty set or a zero gradient.
ActiveCone build_active_cone(std::span<const std::string> labels,
                             std::span<const Vector> gradients);

/// Sharp interior step: +inf when max_j <w, u^j> <= 0, otherwise
/// norm_sq / max_j <w, u^j>.
Extended sigma_star(const ActiveCone& cone, const Vector& w);

/// d itself when ||d||^2 > 1e-12: every active gradient has <u^j, d> < 0.
std::optional<Vector> mfcq_witness(const ActiveCone& cone);

/// min 1/2 ||Ax - b||^2  s.t.  ||Cx - dvec||_inf <= tau.
struct LinfProblem {
  Matrix A;
  Vector b;
  Matrix C;
  Vector dvec;
  double tau = 1.0;

  /// Checks shapes, tau > 0 and that C has no zero row.
  void validate() const;
  double objective(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  /// g_j(x) = |c_j x - dvec_j| - tau.
  Vector constraint_values(const Vector& x) const;
};

/// ||A x - b|| <= c'x + delta.
struct SocConstraint {
  Matrix A;
  Vector b;
  Vector c;
  double delta = 0.0;

  double value(const Vector& x) const;
  /// A'(Ax - b)/||Ax - b|| - c; undefined at the apex Ax = b.
  Vector gradient(const Vector& x) const;
};

/// min 1/2 x'Qx + q'x  s.t.  SOC constraints.
struct SocpProblem {
  Matrix Q;
  Vector q;
  std::vector<SocConstraint> constraints;

  /// Checks shapes and that Q is symmetric positive semidefinite.
  void validate() const;
  double objective(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  Vector constraint_values(const Vector& x) const;
};

/// Active cone, descent direction w = -grad f and sigma*(w) at a point.
/// `cone` is empty at interior points, where sigma is +inf.
struct StepOracle {
  std::optional<ActiveCone> cone;
  Vector w;
  Extended sigma = Extended::infinity();
};

/// Signed active rows eps_j c_j / ||c_j||; throws DegenerateBox when both
/// signs of a row are active.
StepOracle linf_oracle(const LinfProblem& problem, const Vector& x, double tol = kActivityTol);

/// Active SOC gradients; throws ApexError when an active constraint sits at
/// its apex.
StepOracle socp_oracle(const SocpProblem& problem, const Vector& x, double tol = kActivityTol);

/// x + t (d + sigma w). Throws StepTooLong unless 0 < sigma < sigma*(w) and the
/// corrected direction is strictly inside the polar cone.
Vector fcpg_step(const ActiveCone& cone, const Vector& x, const Vector& w, double sigma,
                 double t);

struct FcpgParams {
  /// Stop when ||grad f|| falls below this.
  double tol = 1e-8;
  int max_iter = 200;
  int max_halvings = 60;
  double activity_tol = kActivityTol;
};

struct TraceRow {
  int iter = 0;
  double objective = 0.0;
  /// -max_j g_j(x); nonnegative for feasible iterates.
  double margin = 0.0;
  std::size_t active_count = 0;
  /// ||d||^2 of the active cone; absent at interior points.
  std::optional<double> norm_sq;
  /// sigma used for the step; absent for plain gradient steps and row 0.
  std::optional<double> sigma;
  double t = 0.0;
};

struct FcpgTrace {
  std::vector<TraceRow> rows;
  Vector x;
  bool converged = false;
  /// How sigma was picked: half of sigma* when finite, ||d||^2/||w|| otherwise.
  std::string sigma_rule = "half-sharp, conservative when sigma* = inf";
};

/// Feasibility-corrected projected gradient: x+ = x + t (d + sigma w) at
/// boundary points, x+ = x + t w in the interior, halving t from 1 until the
/// trial point is feasible. Row 0 records the starting point.
FcpgTrace run_fcpg(const LinfProblem& problem, const Vector& x0, const FcpgParams& params = {});
FcpgTrace run_fcpg(const SocpProblem& problem, const Vector& x0, const FcpgParams& params = {});

/// CSV with header iter,objective,margin,active_count,norm_sq,sigma,t.
void write_trace_csv(std::ostream& out, const FcpgTrace& trace);

}  // namespace circumcone
