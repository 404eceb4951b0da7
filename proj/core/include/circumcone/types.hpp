#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace circumcone {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Nonnegative extended real: either a finite value or +infinity.
///
/// Step lengths and depths branch on the infinite case, so it is carried as a
/// separate state instead of a floating-point infinity.
class Extended {
 public:
  static Extended finite(double value) { return Extended(value, false); }
  static Extended infinity() { return Extended(0.0, true); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// Finite value. Throws std::logic_error when infinite.
  double value() const {
    if (infinite_) throw std::logic_error("Extended::value() on +inf");
    return value_;
  }

  /// Finite value, or std::numeric_limits<double>::infinity().
  double as_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  Extended(double value, bool infinite) : value_(value), infinite_(infinite) {}

  double value_;
  bool infinite_;
};

enum class ErrorKind {
  kConstruction,
  kDimensionMismatch,
  kDependentBase,
  kAffinelyDependent,
  kDegenerateDirection,
  kZeroDirection,
  kHypothesisFails,
  kUnsupportedExact,
  kInfeasiblePoint,
  kEmptyActiveSet,
  kDegenerateBox,
  kApex,
  kStepTooLong,
  kStepFailure,
  kDegenerateAffine,
  kDualDomain,
  kContractViolation,
};

std::string_view error_name(ErrorKind kind);

/// Domain error carrying a stable kind name (reported by the CLI).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace circumcone
