#include "conic/conics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace conic {

namespace {

constexpr double kAlphaClamp = 1e-3;  // keeps sec/tan bounded near pi/2

double rel_tol(double scale) { return 1e-10 * std::max(1.0, scale) * tolerance_scale(); }

void require_geometry_dim(const Vec& center, const UnitVec& axis) {
  if (center.dim() < 2) {
    throw Error(ErrorCode::InvalidArgument, "conics need ambient dimension >= 2");
  }
  if (center.dim() != axis.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "center and axis dimensions differ");
  }
}

void require_kind(const ConicSpec& spec, bool ok, const char* what) {
  if (!ok) {
    throw Error(ErrorCode::KindMismatch,
                std::string(what) + " not defined for kind " + to_string(spec.kind));
  }
}

}  // namespace

const char* to_string(ConicKind kind) noexcept {
  switch (kind) {
    case ConicKind::HyperboloidTwoSheets: return "HyperboloidTwoSheets";
    case ConicKind::Ellipsoid: return "Ellipsoid";
    case ConicKind::Paraboloid: return "Paraboloid";
    case ConicKind::Cone: return "Cone";
  }
  return "?";
}

const char* to_string(SheetTag tag) noexcept {
  switch (tag) {
    case SheetTag::Sheet1: return "Sheet1";
    case SheetTag::Sheet2: return "Sheet2";
    case SheetTag::Whole: return "Whole";
  }
  return "?";
}

Vec ConicSpec::focus1() const { return center + c_param * axis.vec(); }

Vec ConicSpec::focus2() const {
  require_kind(*this, kind != ConicKind::Cone, "focus2");
  return center - c_param * axis.vec();
}

Vec ConicSpec::vertex1() const {
  if (kind == ConicKind::Paraboloid || kind == ConicKind::Cone) return center;
  return center + *a * axis.vec();
}

Vec ConicSpec::vertex2() const {
  if (kind == ConicKind::Paraboloid || kind == ConicKind::Cone) return center;
  return center - *a * axis.vec();
}

double ConicSpec::directrix_distance() const {
  require_kind(*this, kind == ConicKind::HyperboloidTwoSheets || kind == ConicKind::Ellipsoid,
               "directrix distance");
  if (c_param <= rel_tol(*a)) {
    throw Error(ErrorCode::InvalidArgument, "directrix undefined for zero eccentricity");
  }
  return (*a) * (*a) / c_param;
}

Vec ConicSpec::directrix_point1() const { return center + directrix_distance() * axis.vec(); }
Vec ConicSpec::directrix_point2() const { return center - directrix_distance() * axis.vec(); }

double ConicSpec::quad_rhs() const {
  require_kind(*this, kind != ConicKind::Paraboloid, "quadratic form");
  if (kind == ConicKind::Cone) return 0.0;
  return c_param * c_param - *a * *a;
}

ConicSpec make_hyperboloid(Vec center, UnitVec axis, double a, double c_param) {
  require_geometry_dim(center, axis);
  if (!(a > 0.0 && c_param > a)) {
    throw Error(ErrorCode::InvalidConstant, "hyperboloid requires 0 < a < c");
  }
  ConicSpec s{ConicKind::HyperboloidTwoSheets, std::move(center), std::move(axis), c_param,
              a, std::sqrt(c_param * c_param - a * a), c_param / a};
  return s;
}

ConicSpec make_ellipsoid(Vec center, UnitVec axis, double a, double c_param) {
  require_geometry_dim(center, axis);
  if (!(a > 0.0 && c_param >= 0.0 && c_param < a)) {
    throw Error(ErrorCode::InvalidConstant, "ellipsoid requires 0 <= c < a");
  }
  ConicSpec s{ConicKind::Ellipsoid, std::move(center), std::move(axis), c_param,
              a, std::sqrt(a * a - c_param * c_param), c_param / a};
  return s;
}

ConicSpec make_paraboloid(Vec center, UnitVec axis, double c_param) {
  require_geometry_dim(center, axis);
  if (!(c_param > 0.0)) {
    throw Error(ErrorCode::InvalidConstant, "paraboloid requires c > 0");
  }
  return ConicSpec{ConicKind::Paraboloid, std::move(center), std::move(axis), c_param,
                   std::nullopt, std::nullopt, std::nullopt};
}

ConicSpec hyperboloid_from_foci(const Vec& p1, const Vec& p2, double two_a) {
  const Vec diff = p1 - p2;
  const double sep = norm(diff);
  const double tol = rel_tol(std::max({norm_inf(p1), norm_inf(p2), two_a}));
  if (sep <= tol) throw Error(ErrorCode::CoincidentFoci, "focal points coincide");
  if (!(two_a > 0.0)) throw Error(ErrorCode::InvalidConstant, "2a must be positive");
  if (std::abs(two_a - sep) <= tol) {
    throw Error(ErrorCode::DegenerateRays, "a = c: sheets degenerate to rays along the axis");
  }
  if (two_a > sep) {
    throw Error(ErrorCode::InvalidConstant, "2a exceeds the focal separation");
  }
  return make_hyperboloid(0.5 * (p1 + p2), normalize(diff), 0.5 * two_a, 0.5 * sep);
}

ConicSpec ellipsoid_from_foci(const Vec& p1, const Vec& p2, double two_a) {
  const Vec diff = p1 - p2;
  const double sep = norm(diff);
  const double tol = rel_tol(std::max({norm_inf(p1), norm_inf(p2), two_a}));
  if (!(two_a > 0.0)) throw Error(ErrorCode::InvalidConstant, "2a must be positive");
  if (std::abs(two_a - sep) <= tol) {
    throw Error(ErrorCode::DegenerateSegment, "a = c: ellipsoid degenerates to a segment");
  }
  if (two_a < sep) {
    throw Error(ErrorCode::InvalidConstant, "2a smaller than the focal separation");
  }
  if (sep <= tol) {
    // sphere: the axis is arbitrary, fixed to the first coordinate vector
    return make_ellipsoid(0.5 * (p1 + p2), normalize(Vec::axis(p1.dim(), 0)), 0.5 * two_a, 0.0);
  }
  return make_ellipsoid(0.5 * (p1 + p2), normalize(diff), 0.5 * two_a, 0.5 * sep);
}

ConicSpec paraboloid_from_points(const Vec& p1, const Vec& p2) {
  const Vec diff = p1 - p2;
  const double sep = norm(diff);
  if (sep <= rel_tol(std::max(norm_inf(p1), norm_inf(p2)))) {
    throw Error(ErrorCode::CoincidentFoci, "focus and directrix point coincide");
  }
  return make_paraboloid(0.5 * (p1 + p2), normalize(diff), 0.5 * sep);
}

ConicSpec cone_from_axis(const Vec& center, const UnitVec& axis, double eps) {
  require_geometry_dim(center, axis);
  if (!(eps > 1.0 + rel_tol(eps))) {
    throw Error(ErrorCode::InvalidEccentricity, "cone requires eccentricity > 1");
  }
  // only the ratio c/a matters; store the normalized pair (a, c) = (1/eps, 1)
  ConicSpec s{ConicKind::Cone, center, axis, 1.0, 1.0 / eps,
              std::sqrt(1.0 - 1.0 / (eps * eps)), eps};
  return s;
}

double quadric_residual(const ConicSpec& spec, const Vec& x) {
  require_kind(spec, spec.kind != ConicKind::Paraboloid, "quadric_residual");
  const Vec d = x - spec.center;
  const double axial = *spec.eccentricity * dot(spec.axis, d);
  return axial * axial - dot(d, d) - spec.quad_rhs();
}

double paraboloid_residual(const ConicSpec& spec, const Vec& x) {
  require_kind(spec, spec.kind == ConicKind::Paraboloid, "paraboloid_residual");
  const Vec d = x - spec.center;
  const double axial = dot(spec.axis, d);
  return axial * axial - dot(d, d) + 4.0 * spec.c_param * axial;
}

MetricResidual metric_residual(const ConicSpec& spec, const Vec& x) {
  require_kind(spec, spec.kind != ConicKind::Cone, "metric_residual");
  switch (spec.kind) {
    case ConicKind::HyperboloidTwoSheets: {
      const double lhs = distance(spec.focus2(), x) - distance(spec.focus1(), x);
      if (dot(spec.axis, x - spec.center) >= 0.0) {
        return {lhs - 2.0 * *spec.a, SheetTag::Sheet1};
      }
      return {lhs + 2.0 * *spec.a, SheetTag::Sheet2};
    }
    case ConicKind::Ellipsoid: {
      const double lhs = distance(spec.focus2(), x) + distance(spec.focus1(), x);
      return {lhs - 2.0 * *spec.a, SheetTag::Whole};
    }
    default: {  // paraboloid
      const double lhs = distance(spec.focus1(), x) - dot(spec.axis, x - spec.focus2());
      return {lhs, SheetTag::Whole};
    }
  }
}

Hyperplane directrix(const ConicSpec& spec, SheetTag which) {
  require_kind(spec, spec.kind != ConicKind::Cone, "directrix");
  if (spec.kind == ConicKind::Paraboloid) {
    return Hyperplane::through(spec.axis, spec.focus2());
  }
  const Vec point = (which == SheetTag::Sheet2) ? spec.directrix_point2() : spec.directrix_point1();
  return Hyperplane::through(spec.axis, point);
}

namespace {

UnitVec random_orthogonal(std::mt19937_64& rng, const ConicSpec& spec,
                          std::span<const UnitVec> confine) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t n = spec.dim();
  if (confine.size() + 1 >= n) {
    throw Error(ErrorCode::DependentVector,
                "no direction orthogonal to the axis remains in this subspace");
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = gauss(rng);
    g = project_out(g, spec.axis);
    for (const UnitVec& w : confine) g = project_out(g, w);
    if (norm(g) <= 1e-3) continue;
    // re-orthogonalize at unit scale: residual components along the axis get
    // amplified quadratically by far-out surface samples
    Vec u = g / norm(g);
    u = project_out(u, spec.axis);
    for (const UnitVec& w : confine) u = project_out(u, w);
    return normalize(u);
  }
  throw Error(ErrorCode::DependentVector, "failed to draw a direction orthogonal to the axis");
}

void check_sheet(const ConicSpec& spec, SheetTag sheet) {
  const bool two_sheeted =
      spec.kind == ConicKind::HyperboloidTwoSheets || spec.kind == ConicKind::Cone;
  if (two_sheeted && sheet == SheetTag::Whole) {
    throw Error(ErrorCode::KindMismatch, "two-sheeted surface: pick Sheet1 or Sheet2");
  }
  if (!two_sheeted && sheet != SheetTag::Whole) {
    throw Error(ErrorCode::KindMismatch, "connected surface: use Whole");
  }
}

}  // namespace

std::vector<Vec> sample_points(const ConicSpec& spec, SheetTag sheet, std::size_t count,
                               std::uint64_t seed) {
  return sample_points(spec, sheet, count, seed, {});
}

std::vector<Vec> sample_points(const ConicSpec& spec, SheetTag sheet, std::size_t count,
                               std::uint64_t seed, std::span<const UnitVec> confine) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  check_sheet(spec, sheet);
  std::mt19937_64 rng(seed);

  // With no room for an off-axis direction the surface is zero-dimensional:
  // return its vertex set instead of parametrized curves.
  if (confine.size() + 1 >= spec.dim()) {
    switch (spec.kind) {
      case ConicKind::HyperboloidTwoSheets:
        return {sheet == SheetTag::Sheet1 ? spec.vertex1() : spec.vertex2()};
      case ConicKind::Ellipsoid:
        return {spec.vertex1(), spec.vertex2()};
      case ConicKind::Paraboloid:
      case ConicKind::Cone:
        return {spec.center};
    }
  }

  const double sign = (sheet == SheetTag::Sheet2) ? -1.0 : 1.0;
  std::vector<Vec> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const UnitVec u = random_orthogonal(rng, spec, confine);
    switch (spec.kind) {
      case ConicKind::HyperboloidTwoSheets: {
        std::uniform_real_distribution<double> alpha_dist(-(M_PI / 2 - kAlphaClamp),
                                                          M_PI / 2 - kAlphaClamp);
        const double alpha = alpha_dist(rng);
        pts.push_back(spec.center + sign * *spec.a / std::cos(alpha) * spec.axis.vec() +
                      *spec.b * std::tan(alpha) * u.vec());
        break;
      }
      case ConicKind::Ellipsoid: {
        std::uniform_real_distribution<double> alpha_dist(0.0, 2.0 * M_PI);
        const double alpha = alpha_dist(rng);
        pts.push_back(spec.center + *spec.a * std::cos(alpha) * spec.axis.vec() +
                      *spec.b * std::sin(alpha) * u.vec());
        break;
      }
      case ConicKind::Cone: {
        std::uniform_real_distribution<double> beta_dist(-10.0, 10.0);
        const double beta = beta_dist(rng);
        pts.push_back(spec.center + sign * *spec.a * std::abs(beta) * spec.axis.vec() +
                      *spec.b * beta * u.vec());
        break;
      }
      case ConicKind::Paraboloid: {
        std::uniform_real_distribution<double> alpha_dist(-8.0, 8.0);
        const double alpha = alpha_dist(rng);
        pts.push_back(spec.center + spec.c_param * alpha * alpha * spec.axis.vec() +
                      2.0 * spec.c_param * alpha * u.vec());
        break;
      }
    }
  }
  return pts;
}

ConicSpec asymptotic_cone(const ConicSpec& spec) {
  require_kind(spec, spec.kind == ConicKind::HyperboloidTwoSheets, "asymptotic_cone");
  return cone_from_axis(spec.center, spec.axis, *spec.eccentricity);
}

}  // namespace conic
