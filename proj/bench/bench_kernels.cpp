// Serial reference vs OpenMP kernels on the same ensemble request.

#include <benchmark/benchmark.h>

#include "lil/kernels.hpp"
#include "lil/simulate.hpp"

namespace {

lil::EnsembleRequest request(std::size_t paths) {
  return {lil::levy_process(lil::LevyTriplet(lil::Profile::constant(0.0), lil::unit_stable(1.5))), 0.0,
          lil::PathGrid::uniform(1.0, 1024), 7, paths, {}};
}

void BM_EnsembleSerial(benchmark::State& state) {
  const auto req = request(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lil::simulate_ensemble_serial(req));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 1024);
}

void BM_EnsembleParallel(benchmark::State& state) {
  const auto req = request(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lil::simulate_ensemble(req));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 1024);
}

void charfn(benchmark::State& state, lil::Exec exec) {
  const auto ens = lil::simulate_ensemble(request(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    for (std::size_t r = 0; r < ens.records(); r += 64) benchmark::DoNotOptimize(lil::charfn_mean(ens, r, 1.0, exec));
  }
}

void BM_CharfnSerial(benchmark::State& state) { charfn(state, lil::Exec::serial); }
void BM_CharfnParallel(benchmark::State& state) { charfn(state, lil::Exec::parallel); }

}  // namespace

BENCHMARK(BM_EnsembleSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CharfnSerial)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CharfnParallel)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
