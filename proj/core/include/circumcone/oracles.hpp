#pragma once

// Brute-force verifiers. Nothing here calls the closed forms being checked:
// membership is decided from first principles (coordinates, norms, dense
// eigenvalues via Eigen) and depths are found by bisection.

#include "circumcone/cone_zoo.hpp"
#include "circumcone/types.hpp"

#include <cstdint>
#include <functional>
#include <span>

namespace circumcone::oracles {

inline constexpr double kBisectionCap = 1e6;
inline constexpr double kBisectionWidth = 1e-9;
inline constexpr double kMembershipTol = 1e-12;

using Predicate = std::function<bool(const Vector&)>;
/// Signed slack: >= 0 inside the set, < 0 outside.
using Margin = std::function<double(const Vector&)>;

struct ProbeReport {
  int trials = 0;
  int failures = 0;
  /// Smallest slack seen; positive means every probe was inside.
  double worst_margin = 0.0;
  std::uint64_t seed = 0;
};

/// Largest t with membership(d + t w), bisected to width 1e-9. Returns +inf
/// when d + t_max w is still a member. Throws ContractViolation when d is not.
Extended depth_by_bisection(const Predicate& membership, const Vector& d, const Vector& w,
                            double t_max = kBisectionCap);

/// Uniform points v on the sphere of the given radius; a failure is
/// margin(d + v) < -tol.
ProbeReport ball_probe(const Margin& margin, const Vector& d, double radius, int trials,
                       std::uint64_t seed, double tol = kMembershipTol);

/// Probes d + radius * e for each unit direction e (typically extremal rays).
ProbeReport directional_probe(const Margin& margin, const Vector& d, double radius,
                              std::span<const Vector> directions, double tol = kMembershipTol);

/// Random symmetric V with ||V||_F <= 1/n; a failure is
/// lambda_min(I/n - V) < -1e-12. worst_margin is the smallest lambda_min seen.
ProbeReport weyl_check(int n, int trials, std::uint64_t seed);

/// Smallest eigenvalue of I/n - V computed with a dense solver.
double weyl_margin(const Matrix& V);

/// Polar-cone slack for the families with an exact test (DNN throws
/// UnsupportedExact).
Margin polar_margin(const ConeDescriptor& cone);

Predicate from_margin(Margin margin, double tol = kMembershipTol);

/// Deterministic per-trial sub-seed.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t counter);

}  // namespace circumcone::oracles
