#include "conic/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace conic {

namespace {

double input_scale(std::span<const Ball> balls) {
  double s = 1.0;
  for (const Ball& b : balls) s = std::max({s, norm_inf(b.center), b.radius});
  return s;
}

double tangency_tol(std::span<const Ball> balls, const Vec& x) {
  return 1e-7 * std::max(input_scale(balls), norm_inf(x)) * tolerance_scale();
}

std::vector<std::size_t> sort_by_radius(std::span<const Ball> balls) {
  std::vector<std::size_t> idx(balls.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return balls[a].radius > balls[b].radius; });
  return idx;
}

void check_affine_independence(std::span<const Ball> balls) {
  std::vector<UnitVec> basis;
  for (std::size_t i = 1; i < balls.size(); ++i) {
    try {
      basis.push_back(orthonormalize_against(balls[i].center - balls[0].center, basis));
    } catch (const Error&) {
      throw Error(ErrorCode::AffineDependence, "ball centers are affinely dependent");
    }
  }
}

// Moves x along direction q until dir.x = value. Exact for consistent
// systems when q is orthogonal to every previously satisfied constraint.
Vec advance_to_plane(const Vec& x, const UnitVec& q, const Vec& dir, double value) {
  const double den = dot(dir, q.vec());
  if (std::abs(den) <= 1e-12 * tolerance_scale()) {
    throw Error(ErrorCode::AffineDependence, "constraint unreachable along the update direction");
  }
  return x + ((value - dot(dir, x)) / den) * q.vec();
}

CascadeResult solve_equal_radii(std::span<const Ball> balls) {
  const std::size_t n = balls[0].center.dim();
  const std::size_t s = balls.size();

  Vec x = balls[0].center;
  std::vector<UnitVec> normals;  // orthonormalized plane normals
  for (std::size_t j = 1; j < s; ++j) {
    const Bisector bi = bisector(balls[0], balls[j]);
    const Hyperplane& pl = *bi.plane;
    UnitVec q = orthonormalize_against(pl.normal, normals);
    x = advance_to_plane(x, q, pl.normal, pl.offset);
    normals.push_back(std::move(q));
  }

  std::vector<UnitVec> flat_basis;
  for (std::size_t i = 0; i < n && flat_basis.size() < n - (s - 1); ++i) {
    std::vector<UnitVec> against = normals;
    against.insert(against.end(), flat_basis.begin(), flat_basis.end());
    try {
      flat_basis.push_back(orthonormalize_against(Vec::axis(n, i), against));
    } catch (const Error&) {
      // coordinate axis already spanned; try the next one
    }
  }

  // representative point: projection of the first center onto the flat,
  // which is the center of the smallest ball containing the whole set there
  Vec rep = x;
  for (const UnitVec& q : flat_basis) {
    rep += dot(balls[0].center - x, q.vec()) * q.vec();
  }

  CascadeResult res;
  res.kind = CascadeResult::Kind::Flat;
  res.flat_point = rep;
  res.flat_basis = std::move(flat_basis);
  res.hull_basis = std::move(normals);
  res.sheet_vertex = rep;
  res.tangent_z = tangent_radius(rep, balls[0]);
  res.result_dim = n - (s - 1);
  res.balls.assign(balls.begin(), balls.end());
  return res;
}

struct PairData {
  UnitVec axis;        // v_{i1,ik}
  double ecc = 0.0;    // eps_{i1,ik}
  Vec directrix_pt;    // d_{i1,ik}
};

}  // namespace

CascadeState::CascadeState(const ConicSpec& base)
    : v(base.axis),
      center(base.center),
      d_point(base.directrix_point1()),
      vertex(base.vertex1()),
      eps(*base.eccentricity),
      a(*base.a),
      b(*base.b),
      c_param(base.c_param),
      quad_rhs(base.quad_rhs()),
      v1(base.axis),
      eps1(*base.eccentricity),
      c1(base.center) {
  if (base.kind != ConicKind::HyperboloidTwoSheets) {
    throw Error(ErrorCode::KindMismatch, "cascade state starts from a hyperboloid sheet");
  }
}

double tangency_spread(const Vec& x, std::span<const Ball> balls) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Ball& b : balls) {
    const double z = tangent_radius(x, b);
    lo = std::min(lo, z);
    hi = std::max(hi, z);
  }
  return hi - lo;
}

StateDiagnostics verify_state(const CascadeState& state) {
  StateDiagnostics d;
  d.max_abs_u_dot_v1 = state.max_abs_u_dot_v1;
  d.min_v_dot_v1 = state.min_v_dot_v1;
  for (std::size_t i = 0; i < state.hp.size(); ++i) {
    for (std::size_t j = i + 1; j < state.hp.size(); ++j) {
      d.max_hp_pair_dot = std::max(d.max_hp_pair_dot,
                                   std::abs(dot(state.hp[i], state.hp[j].vec())));
    }
    d.max_v_dot_hp = std::max(d.max_v_dot_hp, std::abs(dot(state.v, state.hp[i].vec())));
  }
  return d;
}

CascadeResult intersect_bisectors(std::span<const Ball> balls) {
  if (balls.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "need at least two balls");
  }
  const std::size_t n = balls[0].center.dim();
  for (const Ball& b : balls) {
    if (b.center.dim() != n) {
      throw Error(ErrorCode::DimensionMismatch, "ball dimensions differ");
    }
  }
  const std::size_t s = balls.size();
  if (s > n + 1) {
    throw Error(ErrorCode::TooManyBalls, "more balls than an affinely independent set allows");
  }
  check_affine_independence(balls);

  const double scale = input_scale(balls);
  const double rtol = 1e-10 * scale * tolerance_scale();

  double rmin = balls[0].radius, rmax = balls[0].radius;
  for (const Ball& b : balls) {
    rmin = std::min(rmin, b.radius);
    rmax = std::max(rmax, b.radius);
  }
  if (rmax - rmin <= rtol) return solve_equal_radii(balls);

  // sort by non-increasing radius; base bisector pairs the extremes
  const auto order = sort_by_radius(balls);
  std::vector<Ball> sorted;
  sorted.reserve(s);
  for (std::size_t i : order) sorted.push_back(balls[i]);

  const Bisector base = bisector(sorted.front(), sorted.back());
  CascadeState st(*base.conic);

  std::vector<CascadeStepDiag> diags;

  for (std::size_t k = 2; k + 1 <= s; ++k) {
    const Ball& mid = sorted[k - 1];
    const bool tied_top = sorted.front().radius - mid.radius <= rtol;

    // hyperplane H_k and the constraint pinning d_k
    Vec h_raw(n);
    UnitVec target_dir = st.v1;
    double target_val = 0.0;
    if (tied_top) {
      const Bisector bi = bisector(sorted.front(), mid);
      h_raw = bi.plane->normal.vec();
      target_dir = bi.plane->normal;
      target_val = bi.plane->offset;
    } else {
      const Bisector bi = bisector(sorted.front(), mid);
      const ConicSpec& hc = *bi.conic;
      h_raw = *hc.eccentricity * hc.axis.vec() - st.eps1 * st.v1.vec();
      target_dir = hc.axis;
      target_val = dot(hc.axis, hc.directrix_point1());
    }

    UnitVec h_k = st.v1;
    try {
      h_k = normalize(h_raw);
    } catch (const Error&) {
      throw Error(ErrorCode::AffineDependence, "degenerate cascade hyperplane normal");
    }

    UnitVec hp_k = st.v1;
    try {
      hp_k = orthonormalize_against(h_k, st.hp);
    } catch (const Error&) {
      throw Error(ErrorCode::AffineDependence,
                  "cascade hyperplane dependent on the previous ones");
    }
    if (dot(hp_k, h_k.vec()) < 0.0) hp_k = -hp_k;  // deterministic orientation

    Vec u_raw = project_out(hp_k, st.v);
    if (norm(u_raw) <= 1e-12 * tolerance_scale()) {
      throw Error(ErrorCode::DegenerateOutput,
                  "cascade hyperplane orthogonal to the running axis");
    }
    const UnitVec u_prev = normalize(u_raw);

    const Vec d_k = advance_to_plane(st.d_point, u_prev, target_dir, target_val);
    const double h_hat = dot(hp_k, d_k - st.center);

    Vec vk_raw = project_out(st.v, hp_k);
    if (norm(vk_raw) <= 1e-12 * tolerance_scale()) {
      throw Error(ErrorCode::DegenerateOutput,
                  "running axis collapses onto the cascade hyperplane normal");
    }
    const UnitVec v_k = normalize(vk_raw);
    const double rho = dot(st.v, v_k.vec());
    const double sigma = dot(st.v, hp_k.vec());

    CascadeStepDiag diag;
    diag.k = k;
    diag.rho = rho;
    diag.sigma = sigma;
    diag.h_hat = h_hat;
    diag.u_dot_v1 = dot(u_prev, st.v1.vec());
    diag.v_dot_v1 = dot(v_k, st.v1.vec());

    const double step_scale =
        std::max({1.0, norm_inf(st.center), st.c_param, std::abs(h_hat)});
    const double a2_tol = 1e-12 * step_scale * step_scale * tolerance_scale();

    if (st.running == CascadeState::Running::Point) {
      // a degenerate point survives only if every later plane contains it
      if (std::abs(dot(hp_k, st.center - d_k)) > 1e-9 * step_scale * tolerance_scale()) {
        throw Error(ErrorCode::EmptyIntersection,
                    "cascade hyperplane misses the degenerate point");
      }
    } else if (st.running == CascadeState::Running::Quadric) {
      const double eps_k = st.eps * rho;
      const bool band = std::abs(eps_k - 1.0) <= 1e-9 * (1.0 + eps_k) * tolerance_scale();
      if (!band) {
        const double t = eps_k * eps_k - 1.0;
        const double tilde_c = st.eps * st.eps * rho * sigma * h_hat / t;
        const double a2 = (st.quad_rhs * t + h_hat * h_hat * (st.eps * st.eps - 1.0)) / (t * t);
        if (eps_k < 1.0 && a2 < -a2_tol) {
          throw Error(ErrorCode::EmptyIntersection,
                      "cascade hyperplane misses the running conic");
        }
        st.center = st.center + h_hat * hp_k.vec() - tilde_c * v_k.vec();
        st.tilde_c = tilde_c;
        if (eps_k < 1.0 && a2 <= a2_tol) {
          st.running = CascadeState::Running::Point;
          st.a = 0.0;
          st.b = 0.0;
          st.c_param = 0.0;
          st.quad_rhs = 0.0;
          st.vertex = st.center;
          diag.branch = "point";
        } else {
          st.a = std::sqrt(std::max(a2, 0.0));
          st.quad_rhs = a2 * t;
          st.b = std::sqrt(std::abs(st.quad_rhs));
          st.c_param = st.a * eps_k;
          st.vertex = st.center + st.a * v_k.vec();
          diag.branch = eps_k > 1.0 ? "hyperbolic" : "elliptic";
        }
        st.eps = eps_k;
      } else {
        // parabolic transition of the running quadric
        if (std::abs(h_hat) <= 1e-10 * step_scale * tolerance_scale()) {
          throw Error(ErrorCode::EmptyIntersection,
                      "parabolic cascade step through the running center is empty");
        }
        const double c_focal = st.eps * sigma * h_hat / 2.0;
        const double tilde_c =
            ((st.eps * st.eps * sigma * sigma - 1.0) * h_hat * h_hat - st.quad_rhs) /
            (2.0 * st.eps * sigma * h_hat);
        st.center = st.center + h_hat * hp_k.vec() - tilde_c * v_k.vec();
        st.tilde_c = tilde_c;
        st.running = CascadeState::Running::Paraboloid;
        st.c_param = std::abs(c_focal);
        st.parab_axis_sign = c_focal >= 0.0 ? 1 : -1;
        st.a = 0.0;
        st.b = 0.0;
        st.quad_rhs = 0.0;
        st.eps = 1.0;
        st.vertex = st.center;
        diag.branch = "parabolic";
      }
    } else {
      // running paraboloid, axis w = sign * v_{k-1}
      const double sgn = st.parab_axis_sign;
      const double sigma_p = sgn * sigma;
      const bool band = std::abs(rho - 1.0) <= 2e-9 * tolerance_scale();
      if (band) {
        const double shift = h_hat * h_hat / (4.0 * st.c_param);
        st.center = st.center + h_hat * hp_k.vec() + shift * sgn * v_k.vec();
        st.tilde_c = -sgn * shift;
        st.vertex = st.center;
        diag.branch = "parabolic";
      } else {
        const double t = rho * rho - 1.0;
        const double tilde_p = rho * (sigma_p * h_hat + 2.0 * st.c_param) / t;
        const double a2 = 4.0 * st.c_param *
                          (st.c_param * rho * rho + sigma_p * h_hat) / (t * t);
        if (a2 < -a2_tol) {
          throw Error(ErrorCode::EmptyIntersection,
                      "cascade hyperplane misses the running paraboloid");
        }
        st.center = st.center + h_hat * hp_k.vec() - tilde_p * sgn * v_k.vec();
        st.tilde_c = sgn * tilde_p;
        if (a2 <= a2_tol) {
          st.running = CascadeState::Running::Point;
          st.a = st.b = st.c_param = st.quad_rhs = 0.0;
          st.vertex = st.center;
          diag.branch = "point";
        } else {
          st.running = CascadeState::Running::Quadric;
          st.eps = rho;
          st.a = std::sqrt(a2);
          st.quad_rhs = a2 * t;
          st.b = std::sqrt(std::abs(st.quad_rhs));
          st.c_param = st.a * rho;
          st.vertex = st.center + st.a * v_k.vec();
          diag.branch = "elliptic";
        }
      }
    }

    st.step = k;
    st.v = v_k;
    st.d_point = d_k;
    st.u_prev = u_prev;
    st.h_hat = h_hat;
    st.rho = rho;
    st.sigma = sigma;
    st.hp.push_back(hp_k);
    st.max_abs_u_dot_v1 = std::max(st.max_abs_u_dot_v1, std::abs(diag.u_dot_v1));
    st.min_v_dot_v1 = std::min(st.min_v_dot_v1, diag.v_dot_v1);
    diag.eps = st.eps;
    diag.tilde_c = st.tilde_c;
    const StateDiagnostics sd = verify_state(st);
    diag.max_hp_cross = sd.max_hp_pair_dot;
    diag.max_v_hp = sd.max_v_dot_hp;
    diag.hp = hp_k.vec();
    diag.d_point = d_k;
    diag.center = st.center;
    diag.axis = st.v.vec();
    diag.a = st.a;
    diag.c_param = st.c_param;
    diags.push_back(diag);
  }

  // package
  CascadeResult res;
  res.balls.assign(balls.begin(), balls.end());
  res.step_diags = std::move(diags);
  res.hull_basis = st.hp;
  res.result_dim = n - s + 1;

  auto passes = [&](const Vec& x) { return tangency_spread(x, balls) <= tangency_tol(balls, x); };

  // points or paraboloids have a single vertex candidate; quadrics have two
  std::vector<Vec> candidates;
  if (st.running == CascadeState::Running::Quadric) {
    candidates = {st.center + st.a * st.v.vec(), st.center - st.a * st.v.vec()};
  } else {
    candidates = {st.center};
  }

  std::optional<Vec> chosen;
  for (const Vec& cand : candidates) {
    if (passes(cand)) {
      chosen = cand;
      break;
    }
  }
  if (!chosen) {
    throw Error(ErrorCode::EmptyIntersection,
                "no vertex of the constructed conic satisfies the tangency conditions");
  }
  res.sheet_vertex = *chosen;
  res.tangent_z = tangent_radius(res.sheet_vertex, balls[0]);

  if (st.running == CascadeState::Running::Point || res.result_dim == 0) {
    res.kind = CascadeResult::Kind::PointPair;
    res.points = std::move(candidates);
    res.final_state = std::move(st);
    return res;
  }

  res.kind = CascadeResult::Kind::Conic;
  if (st.running == CascadeState::Running::Paraboloid) {
    const UnitVec axis = st.parab_axis_sign > 0 ? st.v : -st.v;
    res.conic = make_paraboloid(st.center, axis, st.c_param);
    res.sheet = SheetTag::Whole;
  } else if (st.eps > 1.0) {
    res.conic = make_hyperboloid(st.center, st.v, st.a, st.c_param);
    res.sheet = distance(*chosen, res.conic->vertex1()) <=
                        distance(*chosen, res.conic->vertex2())
                    ? SheetTag::Sheet1
                    : SheetTag::Sheet2;
  } else {
    res.conic = make_ellipsoid(st.center, st.v, st.a, st.c_param);
    res.sheet = SheetTag::Whole;
  }
  res.final_state = std::move(st);
  return res;
}

std::vector<Vec> sample_result(const CascadeResult& result, std::size_t count,
                               std::uint64_t seed) {
  std::vector<Vec> pts;
  switch (result.kind) {
    case CascadeResult::Kind::Empty:
      throw Error(ErrorCode::EmptyIntersection, "cannot sample an empty result");
    case CascadeResult::Kind::PointPair: {
      for (const Vec& p : result.points) {
        if (tangency_spread(p, result.balls) <= tangency_tol(result.balls, p)) {
          pts.push_back(p);
        }
      }
      break;
    }
    case CascadeResult::Kind::Flat: {
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> gauss(0.0, 2.0);
      for (std::size_t i = 0; i < count; ++i) {
        Vec x = *result.flat_point;
        for (const UnitVec& q : result.flat_basis) x += gauss(rng) * q.vec();
        pts.push_back(std::move(x));
      }
      break;
    }
    case CascadeResult::Kind::Conic: {
      const SheetTag tag =
          result.conic->kind == ConicKind::HyperboloidTwoSheets ? result.sheet : SheetTag::Whole;
      pts = sample_points(*result.conic, tag, count, seed, result.hull_basis);
      break;
    }
  }
  for (const Vec& p : pts) {
    if (tangency_spread(p, result.balls) > tangency_tol(result.balls, p)) {
      throw Error(ErrorCode::InfeasibleConfiguration,
                  "sampled point violates the common-tangency conditions");
    }
  }
  return pts;
}

}  // namespace conic
