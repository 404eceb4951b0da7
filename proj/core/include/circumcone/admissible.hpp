#pragma once

#include "circumcone/geometry.hpp"
#include "circumcone/types.hpp"

#include <optional>
#include <vector>

namespace circumcone {

/// Largest t >= 0 with d + t w in the polar cone.
struct DepthResult {
  Extended value = Extended::infinity();
  /// Generator attaining max_i <w, u^i> (lowest index on ties); absent when
  /// the depth is infinite.
  std::optional<Eigen::Index> binding_index;
};

/// norm_sq - max_i <v, u^i>. d + v lies in the polar cone iff the margin is
/// nonnegative, and in its interior iff it is positive.
double admissible_margin(const ConicBase& base, double norm_sq, const Vector& v);

/// +inf when max_i <w, u^i> <= 0, otherwise norm_sq / max_i <w, u^i>.
DepthResult directional_depth(const ConicBase& base, double norm_sq, const Vector& w);

/// Lower bound cos^2(theta) / [cos(phi - theta)]_+ on the depth of any unit
/// direction at angle phi from the axis, with theta = arccos sqrt(norm_sq).
Extended angular_depth_bound(double norm_sq, double phi);

/// Points where the inscribed ball of radius norm_sq touches the boundary of
/// the admissible polyhedron: {norm_sq * u^i}.
std::vector<Vector> contact_points(const ConicBase& base, double norm_sq);

}  // namespace circumcone
