#include "conic/apollonius.hpp"

#include <algorithm>
#include <cmath>

namespace conic {

namespace {

double config_scale(std::span<const Ball> circles) {
  double s = 1.0;
  for (const Ball& b : circles) s = std::max({s, norm_inf(b.center), b.radius});
  return s;
}

// Classifies the tangency of candidate (center, radius) against each input,
// or reports failure when neither tangency equation holds within tol.
bool classify_tangencies(const Vec& center, double radius, std::span<const Ball> circles,
                         double tol, TangentCircle& out) {
  const std::size_t m = circles.size();
  out.center = center;
  out.radius = radius;
  out.pattern.resize(m);
  out.tangency.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double d = distance(center, circles[i].center);
    const double internal = std::abs(d - (radius - circles[i].radius));
    const double external = std::abs(d - (radius + circles[i].radius));
    if (std::min(internal, external) > tol) return false;
    out.tangency[i] = internal <= external ? TangencyType::Internal : TangencyType::External;
    out.pattern[i] = out.tangency[i] == TangencyType::Internal ? 1 : -1;
  }
  out.residual = verify_tangency(out, circles);
  return true;
}

}  // namespace

double verify_tangency(const TangentCircle& tc, std::span<const Ball> circles) {
  double worst = 0.0;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    const double d = distance(tc.center, circles[i].center);
    const double want = tc.tangency[i] == TangencyType::Internal
                            ? tc.radius - circles[i].radius
                            : tc.radius + circles[i].radius;
    worst = std::max(worst, std::abs(d - want));
  }
  return worst;
}

ApolloniusResult solve_apollonius(std::span<const Ball> circles,
                                  const ApolloniusOptions& options) {
  const std::size_t m = circles.size();
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "need at least two circles");
  const std::size_t n = circles[0].center.dim();
  if (m != n + 1) {
    throw Error(ErrorCode::InvalidArgument,
                "expected n+1 balls in dimension n (three circles in the plane)");
  }
  for (const Ball& b : circles) {
    if (b.center.dim() != n) {
      throw Error(ErrorCode::DimensionMismatch, "circle dimensions differ");
    }
    if (!(b.radius > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "degenerate input circle (zero radius)");
    }
  }
  // probe affine independence up front so the caller gets AffineDependence
  // rather than eight per-pattern failures
  {
    std::vector<UnitVec> basis;
    for (std::size_t i = 1; i < m; ++i) {
      try {
        basis.push_back(orthonormalize_against(circles[i].center - circles[0].center, basis));
      } catch (const Error&) {
        throw Error(ErrorCode::AffineDependence, "circle centers are affinely dependent");
      }
    }
  }

  double rmax = 0.0;
  for (const Ball& b : circles) rmax = std::max(rmax, b.radius);
  const double shift = 1.0 + rmax;  // makes every signed radius positive

  const double scale = config_scale(circles);
  const double tol = 1e-8 * scale * tolerance_scale();

  ApolloniusResult out;
  for (std::size_t bits = 0; bits < (std::size_t{1} << m); ++bits) {
    SignPattern pattern(m);
    std::vector<Ball> shifted;
    shifted.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      pattern[i] = (bits >> i) & 1 ? -1 : 1;
      shifted.emplace_back(circles[i].center, pattern[i] * circles[i].radius + shift);
    }

    PatternReport report{pattern, PatternReport::Status::Infeasible, ""};
    bool degenerate_pair = false;
    try {
      const CascadeResult cas = intersect_bisectors(shifted);
      std::vector<Vec> candidates;
      if (cas.kind == CascadeResult::Kind::PointPair) {
        candidates = cas.points;
      } else if (cas.kind == CascadeResult::Kind::Flat && cas.result_dim == 0) {
        candidates = {*cas.flat_point};
      } else {
        report.detail = "cascade produced a non-degenerate set";
      }

      for (const Vec& x : candidates) {
        const double spread_tol =
            1e-7 * std::max(config_scale(shifted), norm_inf(x)) * tolerance_scale();
        if (tangency_spread(x, shifted) > spread_tol) continue;
        const double radius = tangent_radius(x, shifted[0]) - shift;
        if (radius < -tol) continue;

        TangentCircle tc;
        if (!classify_tangencies(x, std::max(radius, 0.0), circles, tol, tc)) continue;
        if (tc.pattern != pattern) continue;  // the twin belongs to the negated pattern
        tc.source_pattern = pattern;
        out.circles.push_back(std::move(tc));
        report.status = PatternReport::Status::Solved;
        break;
      }
      if (report.status != PatternReport::Status::Solved && report.detail.empty()) {
        report.detail = "no candidate vertex yields a valid tangent circle";
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::AffineDependence) throw;
      degenerate_pair = e.code() == ErrorCode::ContainedBall ||
                        e.code() == ErrorCode::CoincidentCenters;
      report.status = e.code() == ErrorCode::ContainedBall ? PatternReport::Status::Contained
                                                           : PatternReport::Status::Empty;
      report.detail = e.what();
    }

    if (degenerate_pair && options.degenerate_limits) {
      // a modified pair is (near-)tangent: the pattern's solution collapses
      // onto an input circle; emit the limit whose tangency labels match the
      // requested pattern (or its negation, ambiguous at the coincident input)
      SignPattern negated = pattern;
      for (int& s : negated) s = -s;
      for (const Ball& b : circles) {
        TangentCircle tc;
        if (!classify_tangencies(b.center, b.radius, circles, tol, tc)) continue;
        if (tc.pattern != pattern && tc.pattern != negated) continue;
        tc.source_pattern = pattern;
        out.circles.push_back(std::move(tc));
        report.status = PatternReport::Status::Degenerate;
        report.detail = "solution coincides with an input circle";
        break;
      }
    }
    out.reports.push_back(std::move(report));
  }
  return out;
}

}  // namespace conic
