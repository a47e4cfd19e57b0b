#include <rbmlab/ldp.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_scgf_c(benchmark::State& state) {
    const double k = -static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(rbmlab::ldp::scgf_c(k, 1.0));
}
BENCHMARK(BM_scgf_c)->Arg(1)->Arg(100);

void BM_chi_c_curve(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(rbmlab::ldp::chi_c_curve(1.0));
}
BENCHMARK(BM_chi_c_curve)->Unit(benchmark::kMillisecond);

void BM_variational_occupation(benchmark::State& state) {
    const auto problem = rbmlab::ldp::occupation_problem(1.0, 0.8, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(rbmlab::ldp::variational_rate(problem));
}
BENCHMARK(BM_variational_occupation)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
