#pragma once

#include "conic/bisectors.hpp"
#include "conic/slicer.hpp"

namespace conic {

struct CascadeStepDiag {
  std::size_t k = 0;
  double rho = 0.0;
  double sigma = 0.0;
  double eps = 0.0;
  double h_hat = 0.0;
  double tilde_c = 0.0;
  double u_dot_v1 = 0.0;
  double v_dot_v1 = 0.0;
  double max_hp_cross = 0.0;
  double max_v_hp = 0.0;
  const char* branch = "quadric";
  // post-step snapshot for external cross-validation against the slicer
  Vec hp;
  Vec d_point;
  Vec center;
  Vec axis;
  double a = 0.0;
  double c_param = 0.0;
};

/// Running vectors and parameters of the hyperplane cascade after step k.
/// The running set lives in the flat orthogonal to every hp vector; its
/// quadratic-form parameters are carried with a signed right-hand side so
/// elliptic continuations stay exact.
struct CascadeState {
  enum class Running { Quadric, Paraboloid, Point };

  /// Seeds the recurrence from the base bisector hyperboloid.
  explicit CascadeState(const ConicSpec& base);

  std::size_t step = 1;
  Running running = Running::Quadric;
  UnitVec v;
  Vec center;
  Vec d_point;
  Vec vertex;
  double eps = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c_param = 0.0;
  double quad_rhs = 0.0;
  int parab_axis_sign = 1;  // paraboloid running axis = sign * v
  std::vector<UnitVec> hp;
  std::optional<UnitVec> u_prev;
  double rho = 1.0;
  double sigma = 0.0;
  double h_hat = 0.0;
  double tilde_c = 0.0;
  UnitVec v1;        // base bisector axis, fixed across steps
  double eps1 = 0.0; // base bisector eccentricity, fixed across steps
  Vec c1;
  double max_abs_u_dot_v1 = 0.0;
  double min_v_dot_v1 = 1.0;
};

struct StateDiagnostics {
  double max_abs_u_dot_v1 = 0.0;
  double min_v_dot_v1 = 1.0;
  double max_hp_pair_dot = 0.0;
  double max_v_dot_hp = 0.0;
};

StateDiagnostics verify_state(const CascadeState& state);

/// Intersection of all pairwise bisectors of a ball set.
struct CascadeResult {
  enum class Kind { Conic, Flat, PointPair, Empty };

  Kind kind = Kind::Empty;
  std::optional<ConicSpec> conic;  // Kind::Conic
  SheetTag sheet = SheetTag::Whole;
  std::vector<UnitVec> hull_basis;  // hp_2..hp_{s-1} (Conic), plane normals (Flat)
  std::optional<Vec> flat_point;
  std::vector<UnitVec> flat_basis;
  std::vector<Vec> points;  // Kind::PointPair: candidate vertices
  Vec sheet_vertex;
  double tangent_z = 0.0;
  std::size_t result_dim = 0;
  std::vector<Ball> balls;  // inputs, for verification and sampling
  std::vector<CascadeStepDiag> step_diags;
  std::optional<CascadeState> final_state;
};

/// Replaces the intersection of all pairwise bisectors of `balls` by one
/// bisector hyperboloid cut with s-2 constructed hyperplanes (all radii
/// equal: a plain linear solve). Centers must be affinely independent and
/// s <= n+1.
CascadeResult intersect_bisectors(std::span<const Ball> balls);

/// Seeded points on the result set; every returned point carries an equal
/// tangent radius against all input balls.
std::vector<Vec> sample_result(const CascadeResult& result, std::size_t count,
                               std::uint64_t seed);

/// Largest deviation of the all-pairs tangency equations at x.
double tangency_spread(const Vec& x, std::span<const Ball> balls);

}  // namespace conic
