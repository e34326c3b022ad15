#include "doctest.h"

#include "conic/geometry.hpp"
#include "test_helpers.hpp"

using namespace conic;
using testutil::Rng;

TEST_CASE("normalize") {
  const UnitVec u = normalize(Vec{3.0, 4.0});
  CHECK(u[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(u[1] == doctest::Approx(0.8).epsilon(1e-15));

  const UnitVec e = normalize(Vec{1.0, 0.0, 0.0});
  CHECK(e[0] == 1.0);

  CHECK_THROWS_WITH_AS(normalize(Vec{0.0, 0.0}), doctest::Contains("ZeroVector"), Error);
}

TEST_CASE("normalize is idempotent on its own output") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 2 + i % 7;
    const Vec x = testutil::random_vec(rng, dim, -100.0, 100.0);
    if (norm(x) < 1e-6) continue;
    const UnitVec u = normalize(x);
    const UnitVec uu = normalize(u.vec());
    CHECK(distance(u.vec(), uu.vec()) <= 1e-14);
  }
}

TEST_CASE("project_out") {
  const UnitVec ex = normalize(Vec{1.0, 0.0});
  CHECK(distance(project_out(Vec{1.0, 1.0}, ex), Vec{0.0, 1.0}) == 0.0);
  CHECK(norm(project_out(Vec{2.0, 0.0}, ex)) == 0.0);
  CHECK(distance(project_out(Vec{0.0, 3.0}, ex), Vec{0.0, 3.0}) == 0.0);
}

TEST_CASE("project_out leaves no component along u") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const std::size_t dim = 2 + i % 6;
    const Vec x = testutil::random_vec(rng, dim, -50.0, 50.0);
    const UnitVec u = testutil::random_unit(rng, dim);
    const double res = std::abs(dot(project_out(x, u), u.vec()));
    CHECK(res <= 1e-12 * std::max(1.0, norm(x)));
  }
}

TEST_CASE("orthonormalize_against") {
  const UnitVec ex = normalize(Vec{1.0, 0.0});
  std::vector<UnitVec> basis{ex};
  const UnitVec r = orthonormalize_against(Vec{1.0, 1.0}, basis);
  CHECK(distance(r.vec(), Vec{0.0, 1.0}) <= 1e-15);

  const UnitVec free = orthonormalize_against(Vec{1.0, 0.0}, {});
  CHECK(free[0] == 1.0);

  CHECK_THROWS_WITH_AS(orthonormalize_against(Vec{2.0, 0.0}, basis),
                       doctest::Contains("DependentVector"), Error);
}

TEST_CASE("orthonormalize_against output is unit and orthogonal to the basis") {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const std::size_t dim = 3 + i % 6;
    std::vector<UnitVec> basis;
    for (std::size_t b = 0; b + 2 < dim && basis.size() < dim - 2; ++b) {
      try {
        basis.push_back(
            orthonormalize_against(testutil::random_vec(rng, dim, -10.0, 10.0), basis));
      } catch (const Error&) {
        break;
      }
    }
    try {
      const UnitVec r =
          orthonormalize_against(testutil::random_vec(rng, dim, -10.0, 10.0), basis);
      CHECK(std::abs(norm(r.vec()) - 1.0) <= 1e-12);
      for (const UnitVec& b : basis) CHECK(std::abs(dot(r, b.vec())) <= 1e-10);
    } catch (const Error&) {
      // dependent draw: acceptable, no assertion
    }
  }
}

TEST_CASE("dimension mismatch is rejected") {
  const Vec a{1.0, 2.0};
  const Vec b{1.0, 2.0, 3.0};
  CHECK_THROWS_AS((void)dot(a, b), Error);
  CHECK_THROWS_AS((void)(a + b), Error);
}

TEST_CASE("non-finite coordinates are rejected") {
  std::vector<double> bad{1.0, std::numeric_limits<double>::quiet_NaN()};
  CHECK_THROWS_WITH_AS((void)Vec(std::move(bad)), doctest::Contains("NonFinite"), Error);
}

TEST_CASE("hyperplane helpers") {
  const Hyperplane p = Hyperplane::from_unnormalized(Vec{2.0, 0.0}, 6.0);
  CHECK(p.offset == doctest::Approx(3.0));
  CHECK(p.signed_distance(Vec{4.0, 5.0}) == doctest::Approx(1.0));
  CHECK(p.offset_from(Vec{1.0, 0.0}) == doctest::Approx(2.0));
}
