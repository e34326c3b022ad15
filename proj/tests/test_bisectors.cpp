#include "doctest.h"

#include <cmath>

#include "conic/bisectors.hpp"
#include "test_helpers.hpp"

using namespace conic;
using testutil::Rng;

TEST_CASE("bisector of equal radii is the midplane") {
  const Bisector b = bisector(Ball(Vec{0.0, 0.0}, 1.0), Ball(Vec{2.0, 0.0}, 1.0));
  REQUIRE(b.type == Bisector::Type::Plane);
  CHECK(std::abs(std::abs(b.plane->normal[0]) - 1.0) <= 1e-15);
  CHECK(b.plane->signed_distance(Vec{1.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("bisector of unequal radii is a hyperboloid sheet") {
  const Bisector b = bisector(Ball(Vec{0.0, 0.0}, 2.0), Ball(Vec{3.0, 0.0}, 1.0));
  REQUIRE(b.type == Bisector::Type::Sheet);
  const ConicSpec& h = *b.conic;
  CHECK(*h.a == doctest::Approx(0.5));
  CHECK(h.c_param == doctest::Approx(1.5));
  CHECK(*h.eccentricity == doctest::Approx(3.0));
  CHECK(distance(h.axis.vec(), Vec{-1.0, 0.0}) <= 1e-15);
  CHECK(distance(h.center, Vec{1.5, 0.0}) <= 1e-15);
  CHECK(distance(h.vertex1(), Vec{1.0, 0.0}) <= 1e-15);
  CHECK(b.sheet == SheetTag::Sheet1);

  CHECK_THROWS_WITH_AS(bisector(Ball(Vec{0.0, 0.0}, 5.0), Ball(Vec{1.0, 0.0}, 1.0)),
                       doctest::Contains("ContainedBall"), Error);
  CHECK_THROWS_WITH_AS(bisector(Ball(Vec{1.0, 1.0}, 3.0), Ball(Vec{1.0, 1.0}, 1.0)),
                       doctest::Contains("CoincidentCenters"), Error);
}

TEST_CASE("tangent_radius") {
  CHECK(tangent_radius(Vec{1.0, 0.0}, Ball(Vec{0.0, 0.0}, 2.0)) == doctest::Approx(3.0));
  CHECK(tangent_radius(Vec{1.0, 0.0}, Ball(Vec{3.0, 0.0}, 1.0)) == doctest::Approx(3.0));
  const Ball b(Vec{5.0, -2.0}, 0.75);
  CHECK(tangent_radius(b.center, b) == doctest::Approx(b.radius));
}

TEST_CASE("sampled sheet points certify the bisector equation") {
  Rng rng(222);
  for (int i = 0; i < 100; ++i) {
    const std::size_t dims[] = {2, 3, 5};
    const std::size_t dim = dims[i % 3];
    const auto balls = testutil::random_tangent_ball_set(rng, dim, 2);
    const Bisector bi = bisector(balls[0], balls[1]);
    if (bi.type != Bisector::Type::Sheet) continue;
    const double scale = testutil::ball_scale(balls);
    for (const Vec& x : sample_points(*bi.conic, bi.sheet, 50, 17 + i)) {
      CHECK(std::abs(tangent_radius(x, balls[0]) - tangent_radius(x, balls[1])) <=
            1e-8 * std::max(scale, norm_inf(x)));
    }
  }
}

TEST_CASE("bisector is invariant under a common radius shift") {
  Rng rng(333);
  for (int i = 0; i < 50; ++i) {
    const auto balls = testutil::random_tangent_ball_set(rng, 3, 2);
    std::uniform_real_distribution<double> kdist(0.1, 5.0);
    const double k = kdist(rng);
    const Bisector b1 = bisector(balls[0], balls[1]);
    const Bisector b2 = bisector(Ball(balls[0].center, balls[0].radius + k),
                                 Ball(balls[1].center, balls[1].radius + k));
    REQUIRE(b1.type == b2.type);
    if (b1.type == Bisector::Type::Sheet) {
      CHECK(distance(b1.conic->center, b2.conic->center) <= 1e-12);
      CHECK(distance(b1.conic->axis.vec(), b2.conic->axis.vec()) <= 1e-12);
      CHECK(*b1.conic->a == doctest::Approx(*b2.conic->a).epsilon(1e-12));
      CHECK(b1.conic->c_param == doctest::Approx(b2.conic->c_param).epsilon(1e-12));
    }
  }
}

TEST_CASE("min_containing_two") {
  const Ball big(Vec{0.0, 0.0}, 2.0);
  const Ball small(Vec{3.0, 0.0}, 1.0);
  const Ball mcb = min_containing_two(big, small);
  CHECK(distance(mcb.center, Vec{1.0, 0.0}) <= 1e-15);
  CHECK(mcb.radius == doctest::Approx(3.0));

  const Ball eq = min_containing_two(Ball(Vec{0.0, 0.0}, 1.0), Ball(Vec{2.0, 0.0}, 1.0));
  CHECK(distance(eq.center, Vec{1.0, 0.0}) <= 1e-15);
  CHECK(eq.radius == doctest::Approx(2.0));

  const Ball container = min_containing_two(Ball(Vec{0.0, 0.0}, 5.0), Ball(Vec{1.0, 0.0}, 1.0));
  CHECK(distance(container.center, Vec{0.0, 0.0}) == 0.0);
  CHECK(container.radius == doctest::Approx(5.0));
}

TEST_CASE("min_containing_two contains both balls with tangency") {
  Rng rng(444);
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 2 + i % 4;
    const Ball a(testutil::random_vec(rng, dim), std::abs(testutil::random_vec(rng, 1)[0]));
    const Ball b(testutil::random_vec(rng, dim), std::abs(testutil::random_vec(rng, 1)[0]));
    if (distance(a.center, b.center) < 1e-3) continue;
    const Ball m = min_containing_two(a, b);
    const double scale = std::max({1.0, m.radius, norm_inf(m.center)});
    for (const Ball* p : {&a, &b}) {
      CHECK(m.radius - (distance(m.center, p->center) + p->radius) >= -1e-10 * scale);
    }
    const double dr = std::abs(a.radius - b.radius);
    if (dr < distance(a.center, b.center) - 1e-9) {
      // no containment: both tangencies are tight
      for (const Ball* p : {&a, &b}) {
        CHECK(std::abs(m.radius - (distance(m.center, p->center) + p->radius)) <=
              1e-9 * scale);
      }
    }
  }
}

TEST_CASE("triple hyperplane fixture") {
  const Ball bj(Vec{0.0, 0.0}, 3.0);
  const Ball bk(Vec{4.0, 0.0}, 2.0);
  const Ball bl(Vec{0.0, 3.0}, 1.0);
  const TripleHyperplane ht = triple_hyperplane(bj, bk, bl);
  CHECK(ht.source_case == TripleHyperplane::SourceCase::DistinctRadii);

  // expected plane: -16x + 6y = -25, normalized
  const Vec raw{-16.0, 6.0};
  const double nn = norm(raw);
  const double flip = dot(ht.plane.normal, raw) > 0 ? 1.0 : -1.0;
  CHECK(distance(ht.plane.normal.vec(), flip / nn * raw) <= 1e-12);
  CHECK(ht.plane.offset * flip == doctest::Approx(-25.0 / nn).epsilon(1e-12));

  // d_point satisfies both directrix equations and lies in aff(T)
  REQUIRE(ht.d_point.has_value());
  const ConicSpec hjk = *bisector(bj, bk).conic;
  const ConicSpec hjl = *bisector(bj, bl).conic;
  CHECK(dot(hjk.axis, *ht.d_point) ==
        doctest::Approx(dot(hjk.axis, hjk.directrix_point1())).epsilon(1e-12));
  CHECK(dot(hjl.axis, *ht.d_point) ==
        doctest::Approx(dot(hjl.axis, hjl.directrix_point1())).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(
      triple_hyperplane(Ball(Vec{0.0, 0.0}, 3.0), Ball(Vec{1.0, 0.0}, 2.0),
                        Ball(Vec{2.0, 0.0}, 1.0)),
      doctest::Contains("AffineDependence"), Error);
}

TEST_CASE("equal-radius branches return the plane bisector") {
  // r_k = r_l: H_T is the k-l midplane x - y = 0
  const TripleHyperplane ht = triple_hyperplane(
      Ball(Vec{0.0, 0.0}, 2.0), Ball(Vec{2.0, 0.0}, 1.0), Ball(Vec{0.0, 2.0}, 1.0));
  CHECK(ht.source_case == TripleHyperplane::SourceCase::EqualKL);
  CHECK(std::abs(ht.plane.signed_distance(Vec{1.0, 1.0})) <= 1e-12);
  CHECK(std::abs(ht.plane.signed_distance(Vec{0.0, 0.0})) <= 1e-12);

  const TripleHyperplane jk = triple_hyperplane(
      Ball(Vec{0.0, 0.0}, 2.0), Ball(Vec{2.0, 0.0}, 2.0), Ball(Vec{0.0, 2.0}, 1.0));
  CHECK(jk.source_case == TripleHyperplane::SourceCase::EqualJK);
  CHECK(std::abs(jk.plane.signed_distance(Vec{1.0, 5.0})) <= 1e-12);

  CHECK_THROWS_WITH_AS(
      triple_hyperplane(Ball(Vec{0.0, 0.0}, 1.0), Ball(Vec{2.0, 0.0}, 1.0),
                        Ball(Vec{0.0, 2.0}, 1.0)),
      doctest::Contains("AllRadiiEqual"), Error);
}

TEST_CASE("symmetric_normal fixture and degeneracies") {
  const Ball bj(Vec{0.0, 0.0}, 3.0);
  const Ball bk(Vec{4.0, 0.0}, 2.0);
  const Ball bl(Vec{0.0, 3.0}, 1.0);
  const auto [normal, rhs] = symmetric_normal(bj, bk, bl);
  CHECK(distance(normal, Vec{-4.0, 1.5}) <= 1e-12);
  CHECK(rhs == doctest::Approx(-25.0 / 4.0).epsilon(1e-14));

  CHECK_THROWS_AS(symmetric_normal(Ball(Vec{0.0, 0.0}, 1.0), Ball(Vec{2.0, 0.0}, 1.0),
                                   Ball(Vec{0.0, 2.0}, 1.0)),
                  Error);
}

TEST_CASE("triple_hyperplane agrees with symmetric_normal") {
  Rng rng(555);
  int tested = 0;
  while (tested < 200) {
    const std::size_t dims[] = {2, 3, 5};
    const std::size_t dim = dims[tested % 3];
    const auto balls = testutil::random_tangent_ball_set(rng, dim, 3);
    TripleHyperplane ht = triple_hyperplane(balls[0], balls[1], balls[2]);
    if (ht.source_case != TripleHyperplane::SourceCase::DistinctRadii) continue;
    const auto [raw, rhs] = symmetric_normal(balls[0], balls[1], balls[2]);
    const double nn = norm(raw);
    const double align = dot(ht.plane.normal, raw) / nn;
    CHECK(std::abs(std::abs(align) - 1.0) <= 1e-9);
    const double flip = align > 0 ? 1.0 : -1.0;
    const double scale = testutil::ball_scale(balls);
    CHECK(std::abs(flip * ht.plane.offset - rhs / nn) <= 1e-9 * scale);
    ++tested;
  }
}

TEST_CASE("bisector-pair intersections lie on the triple hyperplane") {
  Rng rng(666);
  int tested = 0;
  while (tested < 60) {
    const std::size_t dims[] = {2, 3, 5};
    const std::size_t dim = dims[tested % 3];
    const auto balls = testutil::random_tangent_ball_set(rng, dim, 3);
    std::optional<TripleHyperplane> ht;
    try {
      ht = triple_hyperplane(balls[0], balls[1], balls[2]);
    } catch (const Error&) {
      continue;
    }
    const double scale = testutil::ball_scale(balls);

    // orthonormal frame of aff(T)
    const Vec origin = balls[0].center;
    const UnitVec e1 = normalize(balls[1].center - origin);
    std::vector<UnitVec> b1{e1};
    const UnitVec e2 = orthonormalize_against(balls[2].center - origin, b1);

    // each pair of bisectors, encoded as (ball pair, ball pair)
    const std::array<std::array<int, 4>, 3> combos{
        {{0, 1, 0, 2}, {0, 1, 1, 2}, {0, 2, 1, 2}}};
    for (const auto& c : combos) {
      testutil::BisectorPairOracle oracle{origin, e1, e2, &balls[c[0]], &balls[c[1]],
                                          &balls[c[2]], &balls[c[3]]};
      // seeds spread around the centers to find intersection points
      std::uniform_real_distribution<double> sd(-4.0, 4.0);
      int found = 0;
      for (int attempt = 0; attempt < 24 && found < 2; ++attempt) {
        double s = sd(rng), t = sd(rng);
        if (!oracle.solve(s, t, 1e-11 * scale)) continue;
        const Vec x = oracle.embed(s, t);
        ++found;
        CHECK(std::abs(ht->plane.signed_distance(x)) <= 1e-7 * std::max(scale, norm_inf(x)));
      }
      CHECK(found >= 1);  // the construction guarantees one tangent point exists
    }
    ++tested;
  }
}
