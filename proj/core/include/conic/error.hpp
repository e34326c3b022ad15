#pragma once

#include <stdexcept>
#include <string>

namespace conic {

enum class ErrorCode {
  ZeroVector,
  DependentVector,
  DimensionMismatch,
  NonFinite,
  DegenerateRays,
  DegenerateSegment,
  InvalidConstant,
  InvalidEccentricity,
  CoincidentFoci,
  CoincidentCenters,
  KindMismatch,
  EmptyIntersection,
  DegenerateOutput,
  ContainedBall,
  AffineDependence,
  AllRadiiEqual,
  TooManyBalls,
  InfeasibleConfiguration,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Library-wide exception; carries a stable code so callers (CLI) can map
/// geometric infeasibility vs. input validation to distinct exit paths.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for conditions where the inputs are well-formed but the requested
  /// geometric object does not exist.
  bool infeasible() const noexcept {
    switch (code_) {
      case ErrorCode::EmptyIntersection:
      case ErrorCode::ContainedBall:
      case ErrorCode::InfeasibleConfiguration:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

}  // namespace conic
