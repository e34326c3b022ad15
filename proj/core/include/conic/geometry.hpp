#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "conic/error.hpp"

namespace conic {

/// Scales every internal degeneracy threshold. 1.0 by default; the CLI's
/// --tol flag sets it once at startup before any geometry runs.
double tolerance_scale() noexcept;
void set_tolerance_scale(double scale);

/// Relative degeneracy threshold: 1e-12 * max(1, scale).
double zero_tol(double scale = 1.0) noexcept;

/// Dense real vector with runtime dimension. All coordinates are checked
/// finite on construction; dimensions must agree across operands.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t dim) : c_(dim, 0.0) {}
  Vec(std::initializer_list<double> coords);
  explicit Vec(std::vector<double> coords);

  static Vec axis(std::size_t dim, std::size_t index, double length = 1.0);

  std::size_t dim() const noexcept { return c_.size(); }
  double operator[](std::size_t i) const noexcept { return c_[i]; }
  double& operator[](std::size_t i) noexcept { return c_[i]; }
  const std::vector<double>& coords() const noexcept { return c_; }

  Vec& operator+=(const Vec& rhs);
  Vec& operator-=(const Vec& rhs);
  Vec& operator*=(double s);
  Vec& operator/=(double s);

  friend Vec operator+(Vec lhs, const Vec& rhs) { return lhs += rhs; }
  friend Vec operator-(Vec lhs, const Vec& rhs) { return lhs -= rhs; }
  friend Vec operator*(Vec lhs, double s) { return lhs *= s; }
  friend Vec operator*(double s, Vec rhs) { return rhs *= s; }
  friend Vec operator/(Vec lhs, double s) { return lhs /= s; }
  Vec operator-() const;

 private:
  std::vector<double> c_;
};

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
double norm_inf(const Vec& a);
double distance(const Vec& a, const Vec& b);
bool all_finite(const Vec& a) noexcept;

/// A Vec with unit Euclidean norm (checked to 1e-12 at construction).
class UnitVec {
 public:
  explicit UnitVec(const Vec& v);

  const Vec& vec() const noexcept { return v_; }
  operator const Vec&() const noexcept { return v_; }
  std::size_t dim() const noexcept { return v_.dim(); }
  double operator[](std::size_t i) const noexcept { return v_[i]; }

  UnitVec operator-() const { return UnitVec(-v_, unchecked_tag{}); }

 private:
  struct unchecked_tag {};
  UnitVec(Vec v, unchecked_tag) : v_(std::move(v)) {}
  friend UnitVec normalize(const Vec&);
  friend UnitVec orthonormalize_against(const Vec&, std::span<const UnitVec>);

  Vec v_;
};

/// x / ||x||. Throws ZeroVector when ||x|| is below the degeneracy threshold.
UnitVec normalize(const Vec& x);

/// x - (x.u)u; orthogonal to u up to rounding.
Vec project_out(const Vec& x, const UnitVec& u);

/// Gram-Schmidt step with one re-orthogonalization pass. Returns a unit
/// vector orthogonal to every basis element, inside span(basis + {x}).
/// Throws DependentVector when x is numerically inside span(basis).
UnitVec orthonormalize_against(const Vec& x, std::span<const UnitVec> basis);

/// Hyperplane h.x = offset with unit normal.
struct Hyperplane {
  UnitVec normal;
  double offset;

  Hyperplane(UnitVec n, double off) : normal(std::move(n)), offset(off) {}
  static Hyperplane from_unnormalized(const Vec& normal, double rhs);
  static Hyperplane through(const UnitVec& normal, const Vec& point);

  double signed_distance(const Vec& x) const { return dot(normal, x) - offset; }
  /// Offset measured from a reference point c: offset - h.c.
  double offset_from(const Vec& c) const { return offset - dot(normal, c); }
};

}  // namespace conic
