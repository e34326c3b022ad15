#pragma once

#include <array>
#include <optional>
#include <utility>

#include "conic/conics.hpp"

namespace conic {

struct Ball {
  Vec center;
  double radius = 0.0;

  Ball() = default;
  Ball(Vec c, double r);
};

/// Additively weighted bisector of two balls: the centers of all balls
/// internally tangent to (containing) both. A hyperplane when the radii are
/// equal, otherwise one sheet of a hyperboloid whose foci are the two centers.
struct Bisector {
  enum class Type { Plane, Sheet };

  Type type;
  std::optional<Hyperplane> plane;   // Type::Plane
  std::optional<ConicSpec> conic;    // Type::Sheet (hyperboloid)
  SheetTag sheet = SheetTag::Sheet1; // the sheet nearest the larger ball
  std::size_t index_j = 0;           // input index of the larger-radius ball
  std::size_t index_k = 1;
};

/// Evaluates the defining equation: |tangent_radius(x,bj) - tangent_radius(x,bk)|
/// vanishes exactly on the bisector.
double tangent_radius(const Vec& x, const Ball& b);

Bisector bisector(const Ball& bj, const Ball& bk);

/// The smallest ball containing both. Returns the larger ball when one
/// contains the other.
Ball min_containing_two(const Ball& bj, const Ball& bk);

/// The hyperplane containing every pairwise intersection of the three
/// bisectors of a ball triple with affinely independent centers.
struct TripleHyperplane {
  enum class SourceCase { DistinctRadii, EqualKL, EqualJK };

  Hyperplane plane;
  SourceCase source_case = SourceCase::DistinctRadii;
  std::optional<Vec> d_point;      // common directrix point (distinct radii)
  std::optional<UnitVec> u_t;      // in-aff(T) direction used to reach it
  std::array<std::size_t, 3> order{0, 1, 2};  // input indices sorted by radius desc
};

TripleHyperplane triple_hyperplane(const Ball& b0, const Ball& b1, const Ball& b2);

/// Closed-form (unnormalized) normal and right-hand side of the same plane,
/// expressed directly in centers and radii. Independent cross-check of
/// triple_hyperplane; requires strictly decreasing radii.
std::pair<Vec, double> symmetric_normal(const Ball& b0, const Ball& b1, const Ball& b2);

}  // namespace conic
