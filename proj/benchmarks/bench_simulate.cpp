#include <rbmlab/simulate.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_run_ensemble(benchmark::State& state) {
    rbmlab::SimConfig c;
    c.r = 1.0;
    c.T = 10.0;
    c.n_paths = static_cast<std::size_t>(state.range(0));
    c.seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(rbmlab::run_ensemble(c));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_run_ensemble)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_reset_epochs(benchmark::State& state) {
    rbmlab::RngStream stream(1, 0);
    std::vector<double> out;
    for (auto _ : state) {
        rbmlab::sample_reset_epochs(stream, state.range(0), 100.0, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_reset_epochs)->Arg(1)->Arg(100);

}  // namespace
