#pragma once

#include "circumcone/admissible.hpp"
#include "circumcone/geometry.hpp"
#include "circumcone/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace circumcone {

/// Hypothesis tolerance on the distance from the origin to aff(E_K).
inline constexpr double kHypothesisTol = 1e-8;
/// Slack allowed by the exact polar-membership tests.
inline constexpr double kPolarTol = 1e-10;

class ConeDescriptor;

/// Nonnegative orthant R^n_+.
struct Orthant {
  Eigen::Index n;
};
/// Second-order cone {(x, t) in R^{n-1} x R : ||x|| <= t}; t is the last
/// coordinate.
struct SecondOrder {
  Eigen::Index n;
};
/// Positive-semidefinite n x n matrices, embedded in R^{n(n+1)/2} by the
/// isometric half-vectorization (see psd_embed).
struct Psd {
  Eigen::Index n;
};
/// Doubly nonnegative matrices: PSD with nonnegative entries. Same embedding
/// as Psd.
struct Dnn {
  Eigen::Index n;
};
/// p-cone {(x, t) : ||x||_p <= t}.
struct PCone {
  Eigen::Index n;
  double p;
};
/// Direct product; block coordinates are concatenated in order.
struct Product {
  std::vector<ConeDescriptor> blocks;
};
/// Finitely generated cone given by its conic base.
struct Polyhedral {
  ConicBase base;
};

/// Tagged description of a canonical cone. Construction validates the
/// variant's invariants.
class ConeDescriptor {
 public:
  using Variant = std::variant<Orthant, SecondOrder, Psd, Dnn, PCone, Product, Polyhedral>;

  ConeDescriptor(Variant v);  // NOLINT: implicit by design of the tagged union

  static ConeDescriptor orthant(Eigen::Index n) { return {Orthant{n}}; }
  static ConeDescriptor soc(Eigen::Index n) { return {SecondOrder{n}}; }
  static ConeDescriptor psd(Eigen::Index n) { return {Psd{n}}; }
  static ConeDescriptor dnn(Eigen::Index n) { return {Dnn{n}}; }
  static ConeDescriptor pcone(Eigen::Index n, double p) { return {PCone{n, p}}; }
  static ConeDescriptor product(std::vector<ConeDescriptor> blocks) {
    return {Product{std::move(blocks)}};
  }
  static ConeDescriptor polyhedral(ConicBase base) { return {Polyhedral{std::move(base)}}; }

  const Variant& variant() const { return variant_; }
  /// Dimension of the ambient (embedded) space.
  Eigen::Index dim() const;
  /// Short name: "orthant", "soc", "psd", "dnn", "pcone", "product", "polyhedral".
  std::string name() const;

 private:
  Variant variant_;
};

/// Isometric embedding of a symmetric matrix: upper triangle in row-major
/// order, off-diagonal entries scaled by sqrt(2).
Vector psd_embed(const Matrix& x);
Matrix psd_unembed(const Vector& v, Eigen::Index n);

/// Closed-form circumcentric direction. Throws HypothesisFails for p-cones
/// with p != 2 and for polyhedral bases whose affine hull contains 0.
CircumDirection circum_direction(const ConeDescriptor& c);

/// Seed-deterministic unit points of the extremal section E_K.
/// Orthant: coordinate vectors (capped at n). Polyhedral: the base.
/// PCone: the witness directions +-e1, +-e2, (e1+e2)/sqrt2 first, then random.
/// Product: each block sampled with `count`, block-embedded.
std::vector<Vector> sample_extremal(const ConeDescriptor& c, int count, std::uint64_t seed);

struct HypothesisReport {
  bool holds = false;
  double distance = 0.0;
  std::optional<CircumDirection> witness;
};

/// Distance from the origin to aff(samples); holds iff > kHypothesisTol.
HypothesisReport hypothesis_check(std::span<const Vector> samples);

/// sup_{u in E_K} <w, u> in closed form. Throws UnsupportedExact for DNN and
/// p-cones (and products containing them).
double support_on_extremal(const ConeDescriptor& c, const Vector& w);

/// max of <w, u> over sample_extremal; a lower bound on the true support.
double support_sampled(const ConeDescriptor& c, const Vector& w, int count, std::uint64_t seed);

/// Directional depth for a canonical cone.
struct ConeDepth {
  Extended value = Extended::infinity();
  /// Point of cl(E_K) attaining the support; absent when the depth is +inf.
  std::optional<Vector> contact;
  /// Index into the finite extremal section for orthant/polyhedral cones.
  std::optional<Eigen::Index> binding_index;
};

ConeDepth directional_depth_np(const ConeDescriptor& c, const Vector& w);

/// Exact test of z in K°, with slack kPolarTol. Throws UnsupportedExact for DNN.
bool polar_membership(const ConeDescriptor& c, const Vector& z);

/// Sampling falsification for any cone (the only check offered for DNN):
/// false when some sampled u in E_K has <z, u> > kPolarTol.
bool polar_not_falsified(const ConeDescriptor& c, const Vector& z, int count, std::uint64_t seed);

/// 1/r for the simple symmetric cones (orthant and PSD: r = n, SOC: r = 2).
std::optional<double> jordan_value(const ConeDescriptor& c);

}  // namespace circumcone
