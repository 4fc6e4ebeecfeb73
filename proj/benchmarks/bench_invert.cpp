#include "toricabel/abel_trace.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace toricabel;

namespace {

void BM_InvertPlaneCurve(benchmark::State& state) {
  const auto degree = static_cast<long long>(state.range(0));
  const auto fan = builtin_fan("P2");
  const LineBundle l(fan, TDivisor{make_int_vec({0, 0, 1})});
  std::mt19937_64 rng(3);
  const CurveData curve = random_curve(chart_newton(*fan, TDivisor{make_int_vec({0, 0, degree})}, Cone({0, 1})), rng);
  const FormData form = random_form(chart_newton(*fan, l.divisor(), Cone({0, 1})), rng);
  InversionConfig cfg;
  cfg.seed = 11;
  for (auto _ : state) {
    const InversionReport r = invert(curve, form, l, cfg);
    if (!r.pass) state.SkipWithError("round trip failed");
    benchmark::DoNotOptimize(r.curve_error);
  }
}
BENCHMARK(BM_InvertPlaneCurve)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace
