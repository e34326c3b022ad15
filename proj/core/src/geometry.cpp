#include "conic/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <utility>

namespace conic {

namespace {
std::atomic<double> g_tol_scale{1.0};

void check_same_dim(const Vec& a, const Vec& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "operands have dimensions " + std::to_string(a.dim()) + " and " +
                    std::to_string(b.dim()));
  }
}
}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DependentVector: return "DependentVector";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DegenerateRays: return "DegenerateRays";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::InvalidConstant: return "InvalidConstant";
    case ErrorCode::InvalidEccentricity: return "InvalidEccentricity";
    case ErrorCode::CoincidentFoci: return "CoincidentFoci";
    case ErrorCode::CoincidentCenters: return "CoincidentCenters";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::DegenerateOutput: return "DegenerateOutput";
    case ErrorCode::ContainedBall: return "ContainedBall";
    case ErrorCode::AffineDependence: return "AffineDependence";
    case ErrorCode::AllRadiiEqual: return "AllRadiiEqual";
    case ErrorCode::TooManyBalls: return "TooManyBalls";
    case ErrorCode::InfeasibleConfiguration: return "InfeasibleConfiguration";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

double tolerance_scale() noexcept { return g_tol_scale.load(std::memory_order_relaxed); }

void set_tolerance_scale(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance scale must be positive and finite");
  }
  g_tol_scale.store(scale, std::memory_order_relaxed);
}

double zero_tol(double scale) noexcept {
  return 1e-12 * std::max(1.0, scale) * tolerance_scale();
}

Vec::Vec(std::initializer_list<double> coords) : c_(coords) {
  if (!all_finite(*this)) throw Error(ErrorCode::NonFinite, "vector coordinate not finite");
}

Vec::Vec(std::vector<double> coords) : c_(std::move(coords)) {
  if (!all_finite(*this)) throw Error(ErrorCode::NonFinite, "vector coordinate not finite");
}

Vec Vec::axis(std::size_t dim, std::size_t index, double length) {
  if (index >= dim) throw Error(ErrorCode::InvalidArgument, "axis index out of range");
  Vec v(dim);
  v[index] = length;
  return v;
}

Vec& Vec::operator+=(const Vec& rhs) {
  check_same_dim(*this, rhs);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& rhs) {
  check_same_dim(*this, rhs);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Vec& Vec::operator/=(double s) {
  for (double& x : c_) x /= s;
  return *this;
}

Vec Vec::operator-() const {
  Vec r(*this);
  return r *= -1.0;
}

double dot(const Vec& a, const Vec& b) {
  check_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vec& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

double distance(const Vec& a, const Vec& b) { return norm(a - b); }

bool all_finite(const Vec& a) noexcept {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (!std::isfinite(a[i])) return false;
  }
  return true;
}

UnitVec::UnitVec(const Vec& v) : v_(v) {
  if (std::abs(norm(v) - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "vector does not have unit norm");
  }
}

UnitVec normalize(const Vec& x) {
  const double n = norm(x);
  if (n <= zero_tol(norm_inf(x))) {
    throw Error(ErrorCode::ZeroVector, "cannot normalize a (near-)zero vector");
  }
  return UnitVec(x / n, UnitVec::unchecked_tag{});
}

Vec project_out(const Vec& x, const UnitVec& u) {
  return x - dot(x, u.vec()) * u.vec();
}

UnitVec orthonormalize_against(const Vec& x, std::span<const UnitVec> basis) {
  Vec r = x;
  // one re-orthogonalization pass restores orthogonality lost to rounding
  for (int pass = 0; pass < 2; ++pass) {
    for (const UnitVec& b : basis) r -= dot(r, b.vec()) * b.vec();
  }
  const double rn = norm(r);
  if (rn <= zero_tol(norm_inf(x))) {
    throw Error(ErrorCode::DependentVector, "vector lies in the span of the basis");
  }
  return UnitVec(r / rn, UnitVec::unchecked_tag{});
}

Hyperplane Hyperplane::from_unnormalized(const Vec& normal, double rhs) {
  const double n = norm(normal);
  if (n <= zero_tol(norm_inf(normal))) {
    throw Error(ErrorCode::ZeroVector, "hyperplane normal is (near-)zero");
  }
  return Hyperplane(normalize(normal), rhs / n);
}

Hyperplane Hyperplane::through(const UnitVec& normal, const Vec& point) {
  return Hyperplane(normal, dot(normal, point));
}

}  // namespace conic
