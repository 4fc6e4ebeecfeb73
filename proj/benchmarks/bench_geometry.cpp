#include "toricabel/decomposition.hpp"
#include "toricabel/polytope.hpp"

#include <benchmark/benchmark.h>

using namespace toricabel;

namespace {

// Simplex scaled by s in dimension n.
HPolytope simplex(std::size_t n, long long s) {
  std::vector<IntVec> pts{IntVec(n, Integer(0))};
  for (std::size_t i = 0; i < n; ++i) {
    IntVec v(n, Integer(0));
    v[i] = s;
    pts.push_back(v);
  }
  return HPolytope::from_points(n, pts);
}

HPolytope cube(std::size_t n, long long s) {
  std::vector<IntVec> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    IntVec v(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) v[i] = s;
    pts.push_back(v);
  }
  return HPolytope::from_points(n, pts);
}

void BM_MixedVolume(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<HPolytope> ms;
  for (std::size_t i = 0; i < n; ++i) ms.push_back(i % 2 ? cube(n, 1) : simplex(n, static_cast<long long>(i + 1)));
  const PolytopeFamily fam(ms);
  for (auto _ : state) benchmark::DoNotOptimize(mixed_volume(fam, n));
}
BENCHMARK(BM_MixedVolume)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_OrbitalDecomposition(benchmark::State& state) {
  const SplitBundle e = parse_bundle(builtin_fan("P1xP1xP1"), "(1,1,0),(0,1,1)");
  for (auto _ : state) benchmark::DoNotOptimize(orbital_decomposition(e));
}
BENCHMARK(BM_OrbitalDecomposition)->Unit(benchmark::kMillisecond);

}  // namespace
