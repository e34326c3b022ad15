#include "conic/bisectors.hpp"

#include <algorithm>
#include <cmath>

namespace conic {

namespace {

double radius_tol(const Ball& a, const Ball& b) {
  return 1e-10 * std::max({1.0, a.radius, b.radius}) * tolerance_scale();
}

double center_tol(const Ball& a, const Ball& b) {
  return 1e-10 * std::max({1.0, norm_inf(a.center), norm_inf(b.center)}) * tolerance_scale();
}

struct OrderedPair {
  const Ball* j;  // larger radius
  const Ball* k;
  std::size_t ij, ik;
};

OrderedPair order_by_radius(const Ball& b0, const Ball& b1) {
  if (b1.radius > b0.radius + radius_tol(b0, b1)) return {&b1, &b0, 1, 0};
  return {&b0, &b1, 0, 1};
}

}  // namespace

Ball::Ball(Vec c, double r) : center(std::move(c)), radius(r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::InvalidArgument, "ball radius must be finite and non-negative");
  }
}

double tangent_radius(const Vec& x, const Ball& b) { return distance(b.center, x) + b.radius; }

Bisector bisector(const Ball& b0, const Ball& b1) {
  const auto [bj, bk, ij, ik] = order_by_radius(b0, b1);
  const Vec diff = bj->center - bk->center;
  const double sep = norm(diff);
  if (sep <= center_tol(*bj, *bk)) {
    throw Error(ErrorCode::CoincidentCenters, "ball centers coincide");
  }
  const double dr = bj->radius - bk->radius;
  if (dr >= sep - center_tol(*bj, *bk)) {
    throw Error(ErrorCode::ContainedBall, "one ball contains the other; the bisector is empty");
  }

  Bisector bi;
  bi.index_j = ij;
  bi.index_k = ik;
  if (dr <= radius_tol(*bj, *bk)) {
    bi.type = Bisector::Type::Plane;
    bi.plane = Hyperplane::from_unnormalized(
        diff, 0.5 * dot(diff, bj->center + bk->center));
    return bi;
  }
  bi.type = Bisector::Type::Sheet;
  bi.conic = hyperboloid_from_foci(bj->center, bk->center, dr);
  bi.sheet = SheetTag::Sheet1;  // focus1 is the larger ball's center
  return bi;
}

Ball min_containing_two(const Ball& b0, const Ball& b1) {
  const auto [bj, bk, ij, ik] = order_by_radius(b0, b1);
  const double sep = distance(bj->center, bk->center);
  const double dr = bj->radius - bk->radius;
  if (dr >= sep - center_tol(*bj, *bk)) return *bj;  // containment
  if (dr <= radius_tol(*bj, *bk)) {
    return Ball(0.5 * (bj->center + bk->center), 0.5 * sep + bj->radius);
  }
  const Bisector bi = bisector(*bj, *bk);
  const Vec vertex = bi.conic->vertex1();
  return Ball(vertex, tangent_radius(vertex, *bj));
}

namespace {

std::array<std::size_t, 3> sort_triple(const Ball& b0, const Ball& b1, const Ball& b2) {
  std::array<std::size_t, 3> idx{0, 1, 2};
  const Ball* balls[3] = {&b0, &b1, &b2};
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return balls[a]->radius > balls[b]->radius;
  });
  return idx;
}

void check_affinely_independent(const Vec& pj, const Vec& pk, const Vec& pl) {
  const Vec u = pk - pj;
  const Vec w = pl - pj;
  const double tol =
      1e-10 * std::max({1.0, norm_inf(pj), norm_inf(pk), norm_inf(pl)}) * tolerance_scale();
  if (norm(u) <= tol) {
    throw Error(ErrorCode::AffineDependence, "ball centers are affinely dependent");
  }
  if (norm(project_out(w, normalize(u))) <= tol) {
    throw Error(ErrorCode::AffineDependence, "ball centers are affinely dependent");
  }
}

}  // namespace

TripleHyperplane triple_hyperplane(const Ball& b0, const Ball& b1, const Ball& b2) {
  const Ball* balls[3] = {&b0, &b1, &b2};
  const auto order = sort_triple(b0, b1, b2);
  const Ball& bj = *balls[order[0]];
  const Ball& bk = *balls[order[1]];
  const Ball& bl = *balls[order[2]];
  check_affinely_independent(bj.center, bk.center, bl.center);

  TripleHyperplane ht{Hyperplane(normalize(Vec::axis(bj.center.dim(), 0)), 0.0),
                      TripleHyperplane::SourceCase::DistinctRadii,
                      std::nullopt,
                      std::nullopt,
                      order};

  const double tol_kl = radius_tol(bk, bl);
  if (bj.radius - bl.radius <= radius_tol(bj, bl)) {
    throw Error(ErrorCode::AllRadiiEqual,
                "all radii equal: use the plane bisectors directly");
  }
  if (bk.radius - bl.radius <= tol_kl) {
    // B_{k,l} is a hyperplane, and it is the triple hyperplane itself
    ht.source_case = TripleHyperplane::SourceCase::EqualKL;
    ht.plane = *bisector(bk, bl).plane;
    return ht;
  }
  if (bj.radius - bk.radius <= radius_tol(bj, bk)) {
    ht.source_case = TripleHyperplane::SourceCase::EqualJK;
    ht.plane = *bisector(bj, bk).plane;
    return ht;
  }

  // distinct radii: both B_{j,k} and B_{j,l} are hyperboloid sheets
  const ConicSpec hjk = *bisector(bj, bk).conic;
  const ConicSpec hjl = *bisector(bj, bl).conic;
  const Vec h_t = *hjk.eccentricity * hjk.axis.vec() - *hjl.eccentricity * hjl.axis.vec();
  const Vec djk = hjk.directrix_point1();
  const Vec djl = hjl.directrix_point1();

  Vec u_raw = h_t - dot(hjk.axis, h_t) * hjk.axis.vec();
  if (norm(u_raw) <= zero_tol(norm_inf(h_t))) {
    throw Error(ErrorCode::AffineDependence, "triple-plane normal parallel to a bisector axis");
  }
  const UnitVec u_t = normalize(u_raw);
  const double den = dot(hjl.axis, u_t.vec());
  if (std::abs(den) <= 1e-12 * tolerance_scale()) {
    throw Error(ErrorCode::AffineDependence, "directrix planes nearly parallel inside aff(T)");
  }
  const Vec d_point = djk + (dot(hjl.axis, djl - djk) / den) * u_t.vec();

  ht.source_case = TripleHyperplane::SourceCase::DistinctRadii;
  ht.plane = Hyperplane::from_unnormalized(h_t, dot(h_t, d_point));
  ht.d_point = d_point;
  ht.u_t = u_t;
  return ht;
}

std::pair<Vec, double> symmetric_normal(const Ball& b0, const Ball& b1, const Ball& b2) {
  const Ball* balls[3] = {&b0, &b1, &b2};
  const auto order = sort_triple(b0, b1, b2);
  const Ball& bj = *balls[order[0]];
  const Ball& bk = *balls[order[1]];
  const Ball& bl = *balls[order[2]];
  check_affinely_independent(bj.center, bk.center, bl.center);
  if (bj.radius - bl.radius <= radius_tol(bj, bl)) {
    throw Error(ErrorCode::AllRadiiEqual, "closed form requires distinct extreme radii");
  }
  if (bj.radius - bk.radius <= radius_tol(bj, bk) ||
      bk.radius - bl.radius <= radius_tol(bk, bl)) {
    throw Error(ErrorCode::InvalidArgument, "closed form requires strictly decreasing radii");
  }

  const double rj = bj.radius, rk = bk.radius, rl = bl.radius;
  const double denom = (rj - rk) * (rj - rl);
  const Vec normal =
      (rj * (bl.center - bk.center) + rk * (bj.center - bl.center) +
       rl * (bk.center - bj.center)) /
      denom;
  const double nj = dot(bj.center, bj.center);
  const double nk = dot(bk.center, bk.center);
  const double nl = dot(bl.center, bl.center);
  const double rhs =
      (rj * (nl - nk) + rk * (nj - nl) + rl * (nk - nj)) / (2.0 * denom) - 0.5 * (rk - rl);
  return {normal, rhs};
}

}  // namespace conic
