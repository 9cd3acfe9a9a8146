#include <benchmark/benchmark.h>

#include "irlink/dynamics.hpp"
#include "irlink/filter.hpp"
#include "irlink/scenario.hpp"
#include "irlink/signal.hpp"

namespace {

void BM_PendulumStep(benchmark::State& state) {
  const irlink::dynamics::PendulumParams p;
  irlink::dynamics::PendulumState s{0.1, 0.0, 0.0};
  for (auto _ : state) {
    s = irlink::dynamics::step(p, s, 0.01, 1e-3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_PendulumStep);

void BM_FilterApply(benchmark::State& state) {
  const double fs = 48000.0;
  const auto dig = irlink::signal_chain::discretize(irlink::signal_chain::design_bandpass({}), fs);
  const auto in = irlink::Signal::sine(1000.0, 1.0, fs, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(irlink::signal_chain::filter_apply(dig, in));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FilterApply)->Arg(4800)->Arg(48000);

void BM_RunScenario(benchmark::State& state) {
  const irlink::scenario::ScenarioConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(irlink::scenario::run_scenario(cfg));
}
BENCHMARK(BM_RunScenario)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
