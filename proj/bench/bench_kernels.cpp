// Serial reference vs OpenMP path for the kernels that fan out independent
// subproblems. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "vetocore/core.hpp"
#include "vetocore/distortion.hpp"
#include "vetocore/generators.hpp"
#include "vetocore/veto.hpp"

using namespace vetocore;

namespace {

Execution exec_of(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void BM_CoreCertificates(benchmark::State& state) {
  const Election e = gen_random(60, 12, 1);
  for (auto _ : state) benchmark::DoNotOptimize(core_certificates(e, 4, exec_of(state)));
}

void BM_PossibleWinners(benchmark::State& state) {
  const Election e = gen_random(4, 5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_possible_winners(e, 2, Exhaustive{}, exec_of(state)));
}

void BM_DistortionUtilitarian(benchmark::State& state) {
  const Election e = gen_random(5, 4, 3);
  DistortionOptions opts;
  opts.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(distortion_utilitarian(e, 0, opts));
}

void BM_DistortionPercentile(benchmark::State& state) {
  const Election e = gen_random(5, 4, 3);
  DistortionOptions opts;
  opts.exec = exec_of(state);
  opts.stop_on_unbounded = false;
  for (auto _ : state) benchmark::DoNotOptimize(distortion_percentile(e, 0, Rational(1, 2), opts));
}

void BM_DistortionEgalitarian(benchmark::State& state) {
  const Election e = gen_random(5, 4, 3);
  DistortionOptions opts;
  opts.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(distortion_egalitarian(e, 0, opts));
}

}  // namespace

BENCHMARK(BM_CoreCertificates)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PossibleWinners)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DistortionUtilitarian)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DistortionPercentile)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DistortionEgalitarian)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
