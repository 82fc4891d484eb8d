#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "krein/flow.hpp"
#include "krein/spectral.hpp"

namespace {

using namespace krein;

ComplexMat4 random_matrix(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  ComplexMat4 m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m(i, j) = {n(rng), n(rng)};
  return m;
}

void BM_ExteriorPowerMixed(benchmark::State& state) {
  const ComplexMat4 a = random_matrix(1), b = random_matrix(2);
  for (auto _ : state) benchmark::DoNotOptimize(exterior_power(2, 1, a, b));
}
BENCHMARK(BM_ExteriorPowerMixed);

void BM_CharpolyThreeTerm(benchmark::State& state) {
  const ComplexMat4 a = random_matrix(3), b = random_matrix(4);
  for (auto _ : state) benchmark::DoNotOptimize(charpoly_three_term(a, b, {0.5, 0.5}));
}
BENCHMARK(BM_CharpolyThreeTerm);

void BM_QuarticRoots(benchmark::State& state) {
  const QuarticPoly p = charpoly_three_term(random_matrix(5), random_matrix(5), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(quartic_roots(p));
}
BENCHMARK(BM_QuarticRoots);

void BM_Integrate(benchmark::State& state) {
  const SymmetricCurve c = SymmetricCurve::from_sources(
      {{{0, 0}, "1 + t"}, {{1, 1}, "1 + sin(t)"}, {{0, 2}, "t*t"}, {{2, 2}, "1"}, {{3, 3}, "1 - t"}});
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(endpoint(integrate(c, ComplexMat4::identity(), 1.0, steps, 0.0)));
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_Integrate)->Arg(1000)->Arg(10000);

void BM_JordanPair(benchmark::State& state) {
  const ComplexMat4 m = make_jordan_symplectic(std::numbers::pi / 3, {{{1, 0}, {0, 1}}});
  const Complex l0 = std::polar(1.0, std::numbers::pi / 3);
  for (auto _ : state) benchmark::DoNotOptimize(jordan_pair(m, l0));
}
BENCHMARK(BM_JordanPair);

}  // namespace

BENCHMARK_MAIN();
