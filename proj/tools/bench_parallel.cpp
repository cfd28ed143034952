// Serial reference versus OpenMP execution for the two parallel loops: the
// per-variable plane eliminations inside one value-set computation, and the
// independent runs of one detection.

#include <benchmark/benchmark.h>

#include "nkinf/cli.hpp"

namespace {

using namespace nkinf;

Execution policy(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(std::string(state.range(0) == 0 ? "serial" : "parallel") + ", " + std::to_string(max_threads()) +
                 " thread(s)");
}

void BM_PerVariableElimination(benchmark::State& state) {
  auto r = make_ring<RationalField>({"x", "y", "z", "w"});
  QIdeal curve(r, {parse_polynomial("x*y - 1", r), parse_polynomial("x*z + y - 2", r),
                   parse_polynomial("w - x - z", r)});
  auto f = parse_polynomial("x + y*z + w^2", r);
  NonpropernessOptions options;
  options.execution = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(nonproperness_values(curve, f, options));
  label(state);
}

void BM_IndependentRuns(benchmark::State& state) {
  auto r = make_ring<RationalField>({"x", "y"});
  auto f = parse_polynomial("x + x^2*y + y^3", r);
  DetectorConfig config;
  config.seed = 1;
  config.runs = 4;
  config.execution = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_super_polar(f, config));
  label(state);
}

}  // namespace

BENCHMARK(BM_PerVariableElimination)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndependentRuns)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
