#include "toricabel/abel_trace.hpp"
#include "toricabel/numeric_solve.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace toricabel;

namespace {

void BM_SolveDense(benchmark::State& state) {
  const auto d = static_cast<long long>(state.range(0));
  const HPolytope simplex = HPolytope::from_points(
      2, {make_int_vec({0, 0}), make_int_vec({d, 0}), make_int_vec({0, d})});
  std::mt19937_64 rng(7);
  const CPoly f = random_curve(simplex, rng).f;
  const CPoly g = random_curve(simplex, rng).f;
  for (auto _ : state) benchmark::DoNotOptimize(solve_bivariate(f, g));
  state.SetComplexityN(d * d);
}
BENCHMARK(BM_SolveDense)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace
