#include "conic/slicer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace conic {

namespace {

// Tight threshold: the generic frame degrades gracefully down to rho ~ 1e-9,
// so only a bitwise-(anti)parallel normal needs the dedicated branch.
constexpr double kAlignedRho = 1e-12;

struct Geom {
  SliceFrame frame;
  double h_hat;
  double scale;
  double tol_len;  // tolerances for length-valued and squared comparisons
  double tol_sq;
  bool parabolic_band = false;
  double eps = 0.0;  // Q-form sources only
  double rhs = 0.0;
};

Geom analyze(const ConicSpec& spec, const Hyperplane& plane) {
  if (spec.dim() != plane.normal.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "conic and plane dimensions differ");
  }
  Geom g;
  g.frame = slice_frame(spec.axis, plane.normal);
  g.h_hat = plane.offset_from(spec.center);
  g.scale = std::max({1.0, norm_inf(spec.center), spec.c_param, std::abs(g.h_hat)});
  g.tol_len = 1e-10 * g.scale * tolerance_scale();
  g.tol_sq = 1e-10 * g.scale * g.scale * tolerance_scale();
  if (spec.kind == ConicKind::Paraboloid) {
    g.parabolic_band =
        !g.frame.axis_aligned && std::abs(g.frame.rho - 1.0) <= 1e-9 * 2.0 * tolerance_scale();
  } else {
    g.eps = *spec.eccentricity;
    g.rhs = spec.quad_rhs();
    const double er = g.eps * g.frame.rho;
    g.parabolic_band =
        !g.frame.axis_aligned && std::abs(er - 1.0) <= 1e-9 * (1.0 + er) * tolerance_scale();
  }
  return g;
}

UnitVec any_in_plane_axis(const UnitVec& h) {
  for (std::size_t i = 0; i < h.dim(); ++i) {
    Vec e = Vec::axis(h.dim(), i);
    e = project_out(e, h);
    if (norm(e) > 0.5) return normalize(e);
  }
  throw Error(ErrorCode::DependentVector, "no in-plane direction found");
}

// Two-branch sampling: half the points per sheet (a plane with eps*rho > 1
// meets both sheets of the parent).
std::vector<Vec> sample_both_sheets(const ConicSpec& conic, std::size_t count,
                                    std::uint64_t seed, std::span<const UnitVec> confine) {
  const std::size_t n1 = (count + 1) / 2;
  std::vector<Vec> pts = sample_points(conic, SheetTag::Sheet1, n1, seed, confine);
  if (count > n1) {
    const auto rest = sample_points(conic, SheetTag::Sheet2, count - n1, seed + 1, confine);
    pts.insert(pts.end(), rest.begin(), rest.end());
  }
  return pts;
}

SliceClass classify_q_form(const ConicSpec& spec, const Geom& g) {
  const double eps = g.eps;
  const double h2 = g.h_hat * g.h_hat;
  if (g.frame.axis_aligned) {
    if (spec.kind == ConicKind::Cone) {
      return std::abs(g.h_hat) <= g.tol_len ? SliceClass::PointSlice : SliceClass::BallSlice;
    }
    const double r2 = (eps * eps - 1.0) * h2 - g.rhs;
    if (r2 > g.tol_sq) return SliceClass::BallSlice;
    if (r2 >= -g.tol_sq) return SliceClass::PointSlice;
    return SliceClass::EmptySlice;
  }
  const double er = eps * g.frame.rho;
  if (g.parabolic_band) {
    if (std::abs(g.h_hat) <= g.tol_len) {
      // plane through the center, parallel to an asymptotic direction
      return spec.kind == ConicKind::Cone ? SliceClass::DegenerateConeSlice
                                          : SliceClass::EmptySlice;
    }
    return SliceClass::ParabolicSlice;
  }
  if (er > 1.0) {
    if (spec.kind == ConicKind::Cone && std::abs(g.h_hat) <= g.tol_len) {
      return SliceClass::DegenerateConeSlice;
    }
    return SliceClass::HyperbolicSlice;
  }
  // er < 1
  if (spec.kind == ConicKind::Cone) {
    return std::abs(g.h_hat) <= g.tol_len ? SliceClass::PointSlice : SliceClass::EllipticSlice;
  }
  const double a = *spec.a;
  const double gap = h2 - (a * a - g.frame.rho * g.frame.rho * spec.c_param * spec.c_param);
  if (spec.kind == ConicKind::HyperboloidTwoSheets) {
    if (gap > g.tol_sq) return SliceClass::EllipticSlice;
    if (gap >= -g.tol_sq) return SliceClass::PointSlice;
    return SliceClass::EmptySlice;
  }
  // ellipsoid: nonempty iff the plane passes nearer the center than a
  if (gap < -g.tol_sq) return SliceClass::EllipticSlice;
  if (gap <= g.tol_sq) return SliceClass::PointSlice;
  return SliceClass::EmptySlice;
}

SliceClass classify_paraboloid(const ConicSpec& spec, const Geom& g) {
  if (g.frame.axis_aligned) {
    const double r2 = 4.0 * spec.c_param * g.frame.sigma * g.h_hat;
    if (r2 > g.tol_sq) return SliceClass::BallSlice;
    if (r2 >= -g.tol_sq) return SliceClass::PointSlice;
    return SliceClass::EmptySlice;
  }
  if (g.parabolic_band) return SliceClass::ParabolicSlice;
  const double q = spec.c_param * g.frame.rho * g.frame.rho + g.frame.sigma * g.h_hat;
  if (q > g.tol_len) return SliceClass::EllipticSlice;
  if (q >= -g.tol_len) return SliceClass::PointSlice;
  return SliceClass::EmptySlice;
}

}  // namespace

const char* to_string(SliceClass c) noexcept {
  switch (c) {
    case SliceClass::HyperbolicSlice: return "HyperbolicSlice";
    case SliceClass::EllipticSlice: return "EllipticSlice";
    case SliceClass::ParabolicSlice: return "ParabolicSlice";
    case SliceClass::BallSlice: return "BallSlice";
    case SliceClass::PointSlice: return "PointSlice";
    case SliceClass::DegenerateConeSlice: return "DegenerateConeSlice";
    case SliceClass::EmptySlice: return "EmptySlice";
  }
  return "?";
}

SliceFrame slice_frame(const UnitVec& v, const UnitVec& h) {
  SliceFrame f;
  f.sigma = dot(h, v);
  const Vec w = v.vec() - f.sigma * h.vec();
  const double wn = norm(w);
  if (wn <= kAlignedRho) {
    f.axis_aligned = true;
    f.rho = 0.0;
    f.sigma = f.sigma >= 0.0 ? 1.0 : -1.0;
    return f;
  }
  f.g1 = normalize(w);
  f.rho = dot(*f.g1, v);
  return f;
}

SliceClass classify_slice(const ConicSpec& spec, const Hyperplane& plane) {
  const Geom g = analyze(spec, plane);
  return spec.kind == ConicKind::Paraboloid ? classify_paraboloid(spec, g)
                                            : classify_q_form(spec, g);
}

SliceResult slice(const ConicSpec& spec, const Hyperplane& plane) {
  const Geom g = analyze(spec, plane);
  const SliceClass cls = spec.kind == ConicKind::Paraboloid ? classify_paraboloid(spec, g)
                                                            : classify_q_form(spec, g);
  if (cls == SliceClass::EmptySlice) {
    throw Error(ErrorCode::EmptyIntersection, "the hyperplane misses the conic");
  }

  SliceResult res;
  res.cls = cls;
  res.h_hat = g.h_hat;
  res.hull_basis.push_back(plane.normal);

  const Vec q0 = spec.center + g.h_hat * plane.normal.vec();

  if (cls == SliceClass::BallSlice) {
    const double r2 = spec.kind == ConicKind::Paraboloid
                          ? 4.0 * spec.c_param * g.frame.sigma * g.h_hat
                          : (g.eps * g.eps - 1.0) * g.h_hat * g.h_hat - g.rhs;
    res.radius = std::sqrt(std::max(r2, 0.0));
    res.conic = make_ellipsoid(q0, any_in_plane_axis(plane.normal), *res.radius, 0.0);
    return res;
  }

  if (cls == SliceClass::DegenerateConeSlice) {
    res.point = spec.center;  // apex lies on the plane (h_hat ~ 0)
    if (g.parabolic_band) {
      res.ray_direction = g.frame.g1;  // tangent ruling through the apex
    } else {
      res.conic = cone_from_axis(spec.center, *g.frame.g1, g.eps * g.frame.rho);
    }
    return res;
  }

  if (cls == SliceClass::PointSlice) {
    if (g.frame.axis_aligned || spec.kind == ConicKind::Cone) {
      res.point = spec.kind == ConicKind::Cone && !g.frame.axis_aligned ? spec.center : q0;
      return res;
    }
    if (spec.kind == ConicKind::Paraboloid) {
      res.tilde_c = g.frame.rho * (g.frame.sigma * g.h_hat + 2.0 * spec.c_param) /
                    (g.frame.rho * g.frame.rho - 1.0);
    } else {
      const double t = g.eps * g.eps * g.frame.rho * g.frame.rho - 1.0;
      res.tilde_c = g.eps * g.eps * g.frame.rho * g.frame.sigma * g.h_hat / t;
    }
    res.point = q0 - res.tilde_c * g.frame.g1->vec();
    return res;
  }

  if (cls == SliceClass::ParabolicSlice) {
    if (spec.kind == ConicKind::Paraboloid) {
      // plane parallel to the axis: a paraboloid with the same parameter,
      // vertex shifted by h_hat^2/(4c) along the in-plane axis
      res.tilde_c = -g.h_hat * g.h_hat / (4.0 * spec.c_param);
      const Vec vertex = q0 - res.tilde_c * g.frame.g1->vec();
      res.conic = make_paraboloid(vertex, *g.frame.g1, spec.c_param);
      return res;
    }
    const double c_focal = g.eps * g.frame.sigma * g.h_hat / 2.0;
    res.tilde_c = ((g.eps * g.eps * g.frame.sigma * g.frame.sigma - 1.0) * g.h_hat * g.h_hat -
                   g.rhs) /
                  (2.0 * g.eps * g.frame.sigma * g.h_hat);
    const Vec vertex = q0 - res.tilde_c * g.frame.g1->vec();
    const UnitVec axis = c_focal >= 0.0 ? *g.frame.g1 : -*g.frame.g1;
    res.conic = make_paraboloid(vertex, axis, std::abs(c_focal));
    return res;
  }

  // hyperbolic / elliptic
  double a2 = 0.0;
  double ecc_hat = 0.0;
  if (spec.kind == ConicKind::Paraboloid) {
    const double t = g.frame.rho * g.frame.rho - 1.0;
    res.tilde_c = g.frame.rho * (g.frame.sigma * g.h_hat + 2.0 * spec.c_param) / t;
    a2 = 4.0 * spec.c_param *
         (spec.c_param * g.frame.rho * g.frame.rho + g.frame.sigma * g.h_hat) / (t * t);
    ecc_hat = g.frame.rho;
  } else {
    const double t = g.eps * g.eps * g.frame.rho * g.frame.rho - 1.0;
    res.tilde_c = g.eps * g.eps * g.frame.rho * g.frame.sigma * g.h_hat / t;
    a2 = (g.rhs * t + g.h_hat * g.h_hat * (g.eps * g.eps - 1.0)) / (t * t);
    ecc_hat = g.eps * g.frame.rho;
  }
  const double a_hat = std::sqrt(std::max(a2, 0.0));
  const Vec center = q0 - res.tilde_c * g.frame.g1->vec();
  if (cls == SliceClass::HyperbolicSlice) {
    res.conic = make_hyperboloid(center, *g.frame.g1, a_hat, a_hat * ecc_hat);
  } else {
    res.conic = make_ellipsoid(center, *g.frame.g1, a_hat, a_hat * ecc_hat);
  }
  return res;
}

std::vector<Vec> sample_slice_points(const SliceResult& result, std::size_t count,
                                     std::uint64_t seed) {
  switch (result.cls) {
    case SliceClass::EmptySlice:
      throw Error(ErrorCode::EmptyIntersection, "cannot sample an empty slice");
    case SliceClass::PointSlice:
      return {*result.point};
    case SliceClass::DegenerateConeSlice: {
      if (result.ray_direction) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> t(-10.0, 10.0);
        std::vector<Vec> pts;
        for (std::size_t i = 0; i < count; ++i) {
          pts.push_back(*result.point + t(rng) * result.ray_direction->vec());
        }
        return pts;
      }
      return sample_both_sheets(*result.conic, count, seed, result.hull_basis);
    }
    case SliceClass::HyperbolicSlice:
      return sample_both_sheets(*result.conic, count, seed, result.hull_basis);
    default:
      return sample_points(*result.conic, SheetTag::Whole, count, seed, result.hull_basis);
  }
}

std::vector<Vec> vertex_path(const ConicSpec& spec,
                             const std::function<Hyperplane(double)>& plane_at,
                             std::span<const double> rhos) {
  std::vector<Vec> path;
  path.reserve(rhos.size());
  for (double rho : rhos) {
    const SliceResult res = slice(spec, plane_at(rho));
    switch (res.cls) {
      case SliceClass::ParabolicSlice:
        path.push_back(res.conic->center);
        break;
      case SliceClass::HyperbolicSlice:
      case SliceClass::EllipticSlice: {
        // the vertex on the side of tilde_c stays bounded through the
        // parabolic transition; the other one diverges
        const double s = res.tilde_c >= 0.0 ? 1.0 : -1.0;
        path.push_back(res.conic->center + s * *res.conic->a * res.conic->axis.vec());
        break;
      }
      case SliceClass::PointSlice:
        path.push_back(*res.point);
        break;
      default:
        throw Error(ErrorCode::DegenerateOutput, "vertex undefined for this slice class");
    }
  }
  return path;
}

}  // namespace conic
