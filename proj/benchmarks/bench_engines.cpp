#include <benchmark/benchmark.h>

#include "superfluence/metrics.hpp"
#include "superfluence/regression.hpp"

using namespace superfluence;

static void BM_GeneratorApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SystemConfig c{n, 1.0, 0.0};
  const Generator gen(c);
  LadderMatrix s(n), out(n);
  for (int m = 0; m <= n; ++m) s(m, m) = 1.0 / (n + 1);
  for (auto _ : state) {
    gen.apply(s, cplx(3.0, 0.5), out);
    benchmark::DoNotOptimize(out.data().data());
  }
  state.SetItemsProcessed(state.iterations() * (n + 1) * (n + 1));
}
BENCHMARK(BM_GeneratorApply)->Arg(10)->Arg(20)->Arg(64);

static void BM_Evolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SystemConfig c{n, 1.0, 0.0};
  const PulseSpec p{PulseShape::Rectangular, 0.2, kPi, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(simulate(c, p).report.numbers.n_a);
}
BENCHMARK(BM_Evolve)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_TwoTimeWindow(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SystemConfig c{n, 1.0, 0.0};
  const PulseSpec p{PulseShape::Rectangular, 0.1, kPi, 0.0};
  EvolveOptions opt;
  opt.keep_pulse_states = true;
  const auto ev = evolve(c, p, {0.1 / 200, 0.1}, opt);
  for (auto _ : state) {
    const auto grid = assemble_two_time(c, p, ev, ev.series.pulse_end_index, 1);
    benchmark::DoNotOptimize(grid.pm(0, 0));
  }
}
BENCHMARK(BM_TwoTimeWindow)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
