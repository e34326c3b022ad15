#pragma once

#include <functional>
#include <optional>

#include "conic/conics.hpp"

namespace conic {

/// In-plane frame for a (conic axis, plane normal) pair.
///   sigma = h.v, rho = sqrt(1 - sigma^2) = g1.v, g1 the in-plane axis
///   direction. axis_aligned marks h and v (anti)parallel; g1 is then absent.
struct SliceFrame {
  std::optional<UnitVec> g1;
  double rho = 0.0;
  double sigma = 0.0;
  bool axis_aligned = false;
};

SliceFrame slice_frame(const UnitVec& v, const UnitVec& h);

enum class SliceClass {
  HyperbolicSlice,
  EllipticSlice,
  ParabolicSlice,
  BallSlice,
  PointSlice,
  DegenerateConeSlice,
  EmptySlice,
};

const char* to_string(SliceClass c) noexcept;

/// Classifies conic-with-hyperplane intersection by the eps*rho trichotomy
/// (and the tangency/emptiness conditions). Total: never throws on
/// well-formed inputs of equal dimension.
SliceClass classify_slice(const ConicSpec& spec, const Hyperplane& plane);

/// Intersection of a conic with a hyperplane, in ambient coordinates.
/// `conic` carries the (n-1)-dimensional result for the conic-valued classes;
/// `hull_basis` holds the plane normal (the slice's affine hull complement).
/// Degenerate classes carry `point` (PointSlice), `radius` (BallSlice) or
/// `ray_direction` (DegenerateConeSlice tangent to the plane through apex).
struct SliceResult {
  SliceClass cls = SliceClass::EmptySlice;
  std::optional<ConicSpec> conic;
  std::vector<UnitVec> hull_basis;
  double tilde_c = 0.0;
  double h_hat = 0.0;
  std::optional<double> radius;
  std::optional<Vec> point;
  std::optional<UnitVec> ray_direction;
};

/// Throws EmptyIntersection when classify_slice reports EmptySlice.
SliceResult slice(const ConicSpec& spec, const Hyperplane& plane);

/// Seeded points on the slice, drawn inside the slicing plane. Every point
/// lies on the parent surface and on the plane up to rounding.
std::vector<Vec> sample_slice_points(const SliceResult& result, std::size_t count,
                                     std::uint64_t seed);

/// Near-side vertex (the branch that stays bounded through the parabolic
/// transition) of the slice for each rho in `rhos`, with the plane supplied
/// by `plane_at`.
std::vector<Vec> vertex_path(const ConicSpec& spec,
                             const std::function<Hyperplane(double)>& plane_at,
                             std::span<const double> rhos);

}  // namespace conic
