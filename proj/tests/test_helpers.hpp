#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "conic/apollonius.hpp"
#include "conic/cascade.hpp"

// Shared generators and independent oracles. Everything here evaluates the
// defining equations directly and never calls the code path under test.
namespace testutil {

using conic::Ball;
using conic::ConicKind;
using conic::ConicSpec;
using conic::Hyperplane;
using conic::UnitVec;
using conic::Vec;

using Rng = std::mt19937_64;

inline Vec random_vec(Rng& rng, std::size_t dim, double lo = -5.0, double hi = 5.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = u(rng);
  return v;
}

inline UnitVec random_unit(Rng& rng, std::size_t dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    Vec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = gauss(rng);
    if (conic::norm(v) > 1e-3) return conic::normalize(v);
  }
}

inline ConicSpec random_conic(Rng& rng, std::size_t dim, ConicKind kind) {
  std::uniform_real_distribution<double> a_dist(0.4, 2.5);
  std::uniform_real_distribution<double> hyper_ecc(1.2, 5.0);
  std::uniform_real_distribution<double> ell_ecc(0.05, 0.85);
  const Vec center = random_vec(rng, dim);
  const UnitVec axis = random_unit(rng, dim);
  switch (kind) {
    case ConicKind::HyperboloidTwoSheets: {
      const double a = a_dist(rng);
      const double c = a * hyper_ecc(rng);
      return conic::hyperboloid_from_foci(center + c * axis.vec(), center - c * axis.vec(),
                                          2.0 * a);
    }
    case ConicKind::Ellipsoid: {
      const double a = a_dist(rng);
      const double c = a * ell_ecc(rng);
      return conic::ellipsoid_from_foci(center + c * axis.vec(), center - c * axis.vec(),
                                        2.0 * a);
    }
    case ConicKind::Paraboloid: {
      const double c = 0.5 * a_dist(rng);
      return conic::paraboloid_from_points(center + c * axis.vec(), center - c * axis.vec());
    }
    case ConicKind::Cone:
      return conic::cone_from_axis(center, axis, hyper_ecc(rng));
  }
  throw std::logic_error("unreachable");
}

inline double conic_scale(const ConicSpec& spec) {
  return std::max({1.0, conic::norm_inf(spec.center), spec.c_param});
}

/// Independent quadratic-form evaluation: materializes eps^2 v v^T - I and
/// contracts it against the displacement, in contrast to the expanded
/// identity the library uses.
inline double quadric_residual_matrix_oracle(const ConicSpec& spec, const Vec& x) {
  const std::size_t n = spec.dim();
  const double eps = *spec.eccentricity;
  const Vec d = x - spec.center;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double m_ij = eps * eps * spec.axis[i] * spec.axis[j] - (i == j ? 1.0 : 0.0);
      acc += d[i] * m_ij * d[j];
    }
  }
  const double rhs = spec.kind == ConicKind::Cone
                         ? 0.0
                         : spec.c_param * spec.c_param - *spec.a * *spec.a;
  return acc - rhs;
}

/// Feasible random ball sets: picks a tangent point and a common tangent
/// radius first, so the cascade result is guaranteed nonempty.
inline std::vector<Ball> random_tangent_ball_set(Rng& rng, std::size_t dim, std::size_t count,
                                                 bool distinct_radii = true) {
  std::uniform_real_distribution<double> zdist(3.0, 6.0);
  std::uniform_real_distribution<double> u01(0.15, 0.85);
  while (true) {
    const Vec x0 = random_vec(rng, dim, -3.0, 3.0);
    const double z = zdist(rng);
    std::vector<Ball> balls;
    for (std::size_t i = 0; i < count; ++i) {
      const Vec p = random_vec(rng, dim, -3.0, 3.0);
      const double d = conic::distance(p, x0);
      if (d < 0.3 || d > z - 0.2) break;
      // r = z - ||x0 - p|| puts x0 exactly on every pairwise bisector
      balls.emplace_back(p, z - d);
    }
    if (balls.size() != count) continue;
    if (distinct_radii) {
      bool ok = true;
      for (std::size_t i = 0; i < count && ok; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
          if (std::abs(balls[i].radius - balls[j].radius) < 1e-3) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
    }
    try {
      std::vector<UnitVec> basis;
      for (std::size_t i = 1; i < count; ++i) {
        basis.push_back(
            conic::orthonormalize_against(balls[i].center - balls[0].center, basis));
      }
      bool contained = false;
      for (std::size_t i = 0; i < count && !contained; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
          const double dr = std::abs(balls[i].radius - balls[j].radius);
          if (dr >= conic::distance(balls[i].center, balls[j].center) - 1e-6) {
            contained = true;
            break;
          }
        }
      }
      if (contained) continue;
    } catch (const conic::Error&) {
      continue;
    }
    return balls;
  }
}

inline double ball_scale(std::span<const Ball> balls) {
  double s = 1.0;
  for (const Ball& b : balls) s = std::max({s, conic::norm_inf(b.center), b.radius});
  return s;
}

/// 2D Newton root-finder inside aff(T) for the intersection of two bisector
/// equations. f_a(x) = (|x-p_a1|+r_a1) - (|x-p_a2|+r_a2). Oracle for the
/// triple-hyperplane tests; independent of the closed forms.
struct BisectorPairOracle {
  Vec origin;            // p_j
  UnitVec e1, e2;        // orthonormal basis of aff(T) directions
  const Ball *a1, *a2, *b1, *b2;

  Vec embed(double s, double t) const {
    return origin + s * e1.vec() + t * e2.vec();
  }

  double f(const Ball& p, const Ball& q, double s, double t) const {
    const Vec x = embed(s, t);
    return conic::tangent_radius(x, p) - conic::tangent_radius(x, q);
  }

  /// Damped Newton iteration with a central-difference Jacobian: the step is
  /// halved until the residual norm decreases. Returns true on convergence
  /// of both residuals below tol.
  bool solve(double& s, double& t, double tol, int iters = 120) const {
    auto res_norm = [&](double ss, double tt) {
      return std::hypot(f(*a1, *a2, ss, tt), f(*b1, *b2, ss, tt));
    };
    for (int it = 0; it < iters; ++it) {
      const double f1 = f(*a1, *a2, s, t);
      const double f2 = f(*b1, *b2, s, t);
      if (std::abs(f1) < tol && std::abs(f2) < tol) return true;
      const double h = 1e-6;
      const double j11 = (f(*a1, *a2, s + h, t) - f(*a1, *a2, s - h, t)) / (2 * h);
      const double j12 = (f(*a1, *a2, s, t + h) - f(*a1, *a2, s, t - h)) / (2 * h);
      const double j21 = (f(*b1, *b2, s + h, t) - f(*b1, *b2, s - h, t)) / (2 * h);
      const double j22 = (f(*b1, *b2, s, t + h) - f(*b1, *b2, s, t - h)) / (2 * h);
      const double det = j11 * j22 - j12 * j21;
      if (std::abs(det) < 1e-14) return false;
      const double ds = (f1 * j22 - f2 * j12) / det;
      const double dt = (j11 * f2 - j21 * f1) / det;
      const double base = std::hypot(f1, f2);
      double step = 1.0;
      double ns = s - ds, nt = t - dt;
      for (int bt = 0; bt < 30 && res_norm(ns, nt) >= base; ++bt) {
        step *= 0.5;
        ns = s - step * ds;
        nt = t - step * dt;
      }
      s = ns;
      t = nt;
      if (!std::isfinite(s) || !std::isfinite(t)) return false;
    }
    return false;
  }
};

}  // namespace testutil
