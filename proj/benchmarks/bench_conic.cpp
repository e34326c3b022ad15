#include <benchmark/benchmark.h>

#include <random>

#include "conic/apollonius.hpp"
#include "conic/cascade.hpp"
#include "conic/slicer.hpp"

using namespace conic;

namespace {

Vec random_vec(std::mt19937_64& rng, std::size_t dim, double lo = -5.0, double hi = 5.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = u(rng);
  return v;
}

UnitVec random_unit(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    Vec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = gauss(rng);
    if (norm(v) > 1e-3) return normalize(v);
  }
}

ConicSpec random_hyperboloid(std::mt19937_64& rng, std::size_t dim) {
  const Vec center = random_vec(rng, dim);
  const UnitVec axis = random_unit(rng, dim);
  const double a = 1.0, c = 2.5;
  return hyperboloid_from_foci(center + c * axis.vec(), center - c * axis.vec(), 2.0 * a);
}

std::vector<Ball> tangent_ball_set(std::mt19937_64& rng, std::size_t dim, std::size_t count) {
  const Vec x0 = random_vec(rng, dim, -1.0, 1.0);
  const double z = 5.0;
  std::vector<Ball> balls;
  std::uniform_real_distribution<double> dd(0.8, 3.0);
  while (balls.size() < count) {
    const Vec p = x0 + dd(rng) * random_unit(rng, dim).vec();
    balls.emplace_back(p, z - distance(p, x0));
  }
  return balls;
}

void BM_QuadricResidual(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const std::size_t dim = state.range(0);
  const ConicSpec spec = random_hyperboloid(rng, dim);
  const Vec x = random_vec(rng, dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadric_residual(spec, x));
  }
}
BENCHMARK(BM_QuadricResidual)->Arg(3)->Arg(8)->Arg(32);

void BM_Slice(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const std::size_t dim = state.range(0);
  const ConicSpec spec = random_hyperboloid(rng, dim);
  const UnitVec hn = random_unit(rng, dim);
  const Hyperplane plane(hn, dot(hn, spec.center) + 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(slice(spec, plane));
  }
}
BENCHMARK(BM_Slice)->Arg(3)->Arg(8)->Arg(32);

void BM_TripleHyperplane(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto balls = tangent_ball_set(rng, state.range(0), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(triple_hyperplane(balls[0], balls[1], balls[2]));
  }
}
BENCHMARK(BM_TripleHyperplane)->Arg(3)->Arg(8);

void BM_Cascade(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const std::size_t n = state.range(0);
  const auto balls = tangent_ball_set(rng, n, std::min<std::size_t>(n + 1, 5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(intersect_bisectors(balls));
  }
}
BENCHMARK(BM_Cascade)->Arg(3)->Arg(4)->Arg(6);

void BM_Apollonius(benchmark::State& state) {
  const std::vector<Ball> circles{Ball(Vec{0.1, -0.2}, 0.6), Ball(Vec{3.4, 0.3}, 0.8),
                                  Ball(Vec{-0.3, 4.2}, 0.5)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_apollonius(circles));
  }
}
BENCHMARK(BM_Apollonius);

void BM_SamplePoints(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const ConicSpec spec = random_hyperboloid(rng, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_points(spec, SheetTag::Sheet1, 128, 42));
  }
}
BENCHMARK(BM_SamplePoints);

}  // namespace

BENCHMARK_MAIN();
