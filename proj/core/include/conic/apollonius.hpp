#pragma once

#include "conic/cascade.hpp"

namespace conic {

/// Per-input sign: +1 asks for internal tangency (the solution circle
/// contains that input), -1 for external tangency.
using SignPattern = std::vector<int>;

enum class TangencyType { Internal, External };

struct TangentCircle {
  Vec center;
  double radius = 0.0;
  SignPattern pattern;  // verified per-input tangency signs (+1 internal)
  std::vector<TangencyType> tangency;
  double residual = 0.0;      // max tangency-equation defect at construction
  SignPattern source_pattern; // requested pattern whose solve produced it
};

struct PatternReport {
  SignPattern pattern;
  enum class Status { Solved, Degenerate, Empty, Contained, Infeasible } status;
  std::string detail;
};

struct ApolloniusResult {
  std::vector<TangentCircle> circles;  // at most one per sign pattern
  std::vector<PatternReport> reports;
};

struct ApolloniusOptions {
  /// When inputs touch each other, some patterns' solutions collapse onto
  /// the input circles themselves; emit those limits instead of failing.
  bool degenerate_limits = true;
};

/// All circles (spheres for n+1 balls in R^n) tangent to each input with
/// every internal/external combination, via radius negation plus a common
/// shift and the bisector cascade.
ApolloniusResult solve_apollonius(std::span<const Ball> circles,
                                  const ApolloniusOptions& options = {});

/// Max defect of the declared tangency equations against the inputs.
double verify_tangency(const TangentCircle& tc, std::span<const Ball> circles);

}  // namespace conic
