#include <benchmark/benchmark.h>

#include "simulroot/fixtures.hpp"
#include "simulroot/ingest.hpp"
#include "simulroot/solver.hpp"
#include "simulroot/theory.hpp"

using namespace simulroot;

namespace {

PrecisionConfig at(int digits) {
  PrecisionConfig cfg;
  cfg.digits = digits;
  return cfg;
}

// range(0): table number, range(1): digits
void BM_Step(benchmark::State& state) {
  const PrecisionConfig cfg = at(static_cast<int>(state.range(1)));
  const WorkedExample& ex = worked_example(static_cast<int>(state.range(0)));
  const Polynomial p = ex.polynomial(cfg);
  const auto profile = MultiplicityProfile::of(std::get<FactoredPoly>(p));
  const EstimateVector x0 = ex.initial_estimates(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(step(p, x0, profile));
}
BENCHMARK(BM_Step)->ArgsProduct({{1, 2, 3}, {64, 256, 1024}});

void BM_SolveToTolerance(benchmark::State& state) {
  SolveConfig sc;
  sc.precision = at(static_cast<int>(state.range(1)));
  const WorkedExample& ex = worked_example(static_cast<int>(state.range(0)));
  const Polynomial p = ex.polynomial(sc.precision);
  const auto profile = MultiplicityProfile::of(std::get<FactoredPoly>(p));
  const EstimateVector x0 = ex.initial_estimates(sc.precision);
  for (auto _ : state) benchmark::DoNotOptimize(solve(p, profile, x0, sc));
}
BENCHMARK(BM_SolveToTolerance)->ArgsProduct({{1, 2, 3}, {64, 1024}})->Unit(benchmark::kMicrosecond);

void BM_EvalFactoredVsExpanded(benchmark::State& state) {
  const PrecisionConfig cfg = at(64);
  const FactoredPoly f = worked_example(1).polynomial(cfg);
  const Polynomial p = state.range(0) == 0 ? Polynomial(f) : Polynomial(expand_algebraic(f));
  const Real x = Real::parse("0.1", cfg);
  for (auto _ : state) benchmark::DoNotOptimize(eval_with_derivative(p, x));
}
BENCHMARK(BM_EvalFactoredVsExpanded)->Arg(0)->Arg(1);

void BM_Theorem2Check(benchmark::State& state) {
  const PrecisionConfig cfg = at(64);
  const std::vector<int> mults{3, 2, 1};
  const Real d = Real::parse("0.5", cfg);
  const Real span = Real::parse("1.5", cfg);
  const Real c = Real::parse("0.01", cfg);
  const Real q = Real::parse("0.5", cfg);
  const Real xi = Real::parse("1", cfg);
  for (auto _ : state) benchmark::DoNotOptimize(check_theorem2(3, mults, d, span, c, q, xi));
}
BENCHMARK(BM_Theorem2Check);

void BM_RenderJson(benchmark::State& state) {
  const Reproduction r = reproduce_table(2, at(64), Real::parse("1e-14"), Real::parse("1e-18"));
  for (auto _ : state) benchmark::DoNotOptimize(render_trace(r.report, TraceFormat::json));
}
BENCHMARK(BM_RenderJson);

}  // namespace

BENCHMARK_MAIN();
