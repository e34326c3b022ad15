#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "conic/geometry.hpp"

namespace conic {

enum class ConicKind { HyperboloidTwoSheets, Ellipsoid, Paraboloid, Cone };

/// Sheet1 is the sheet closest to focus1, Sheet2 the one closest to focus2.
/// Ellipsoids and paraboloids are connected and use Whole.
enum class SheetTag { Sheet1, Sheet2, Whole };

const char* to_string(ConicKind kind) noexcept;
const char* to_string(SheetTag tag) noexcept;

/// One n-dimensional conic section, symmetric about its major axis.
///
/// Parameter conventions:
///   c_param   distance from the center to either focus (cones store 1)
///   a         metric half-constant (cones store 1/eccentricity; absent for
///             paraboloids)
///   b         sqrt(|c_param^2 - a^2|) (absent for paraboloids)
/// Derived points (foci, vertices, directrix points) are computed on demand.
struct ConicSpec {
  ConicKind kind;
  Vec center;
  UnitVec axis;
  double c_param = 0.0;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> eccentricity;

  std::size_t dim() const noexcept { return center.dim(); }

  Vec focus1() const;
  Vec focus2() const;  // KindMismatch for Cone
  Vec vertex1() const;
  Vec vertex2() const;
  /// Directrix distance d = a^2/c_param from the center (not for cones, and
  /// undefined for spheres where c_param = 0).
  double directrix_distance() const;
  Vec directrix_point1() const;
  Vec directrix_point2() const;
  /// Right-hand side of the quadratic form: c^2 - a^2 for hyperboloids and
  /// ellipsoids, 0 for cones. KindMismatch for paraboloids.
  double quad_rhs() const;
};

ConicSpec hyperboloid_from_foci(const Vec& p1, const Vec& p2, double two_a);
ConicSpec ellipsoid_from_foci(const Vec& p1, const Vec& p2, double two_a);
ConicSpec paraboloid_from_points(const Vec& p1, const Vec& p2);
ConicSpec cone_from_axis(const Vec& center, const UnitVec& axis, double eps);

/// Direct constructors used where the parameters are already known (slice
/// results). They validate the same invariants as the from-foci builders.
ConicSpec make_hyperboloid(Vec center, UnitVec axis, double a, double c_param);
ConicSpec make_ellipsoid(Vec center, UnitVec axis, double a, double c_param);
ConicSpec make_paraboloid(Vec center, UnitVec axis, double c_param);

/// [eps v.(x-c)]^2 - ||x-c||^2 - quad_rhs; zero iff x on the surface.
/// Hyperboloid, ellipsoid and cone only.
double quadric_residual(const ConicSpec& spec, const Vec& x);

/// (x-c)^T [vv^T - I](x-c) + 4 c_param v.(x-c); zero iff x on the paraboloid.
double paraboloid_residual(const ConicSpec& spec, const Vec& x);

struct MetricResidual {
  double value;
  SheetTag sheet;
};

/// Defect in the defining distance equation, tagged with the sheet the point
/// is nearest to. Not available for cones (no materialized foci).
MetricResidual metric_residual(const ConicSpec& spec, const Vec& x);

/// Directrix hyperplane of the requested sheet (paraboloid: the single
/// directrix through focus2, any tag).
Hyperplane directrix(const ConicSpec& spec, SheetTag which);

/// Seeded random points on the surface via the kind-specific parametrization.
/// Each point draws a fresh unit direction orthogonal to the axis (and to
/// every vector of `confine`, for sampling inside an affine slice).
std::vector<Vec> sample_points(const ConicSpec& spec, SheetTag sheet, std::size_t count,
                               std::uint64_t seed);
std::vector<Vec> sample_points(const ConicSpec& spec, SheetTag sheet, std::size_t count,
                               std::uint64_t seed, std::span<const UnitVec> confine);

/// Cone with the same center, axis and eccentricity as the hyperboloid.
ConicSpec asymptotic_cone(const ConicSpec& spec);

}  // namespace conic
