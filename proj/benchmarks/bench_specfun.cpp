#include <rbmlab/analytic.hpp>
#include <rbmlab/specfun.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_airy_ai(benchmark::State& state) {
    double x = -5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbmlab::specfun::airy_ai(x));
        x = x > 5.0 ? -5.0 : x + 0.01;
    }
}
BENCHMARK(BM_airy_ai);

void BM_airy_ai_int(benchmark::State& state) {
    double x = -5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbmlab::specfun::airy_ai_int(x));
        x = x > 5.0 ? -5.0 : x + 0.01;
    }
}
BENCHMARK(BM_airy_ai_int);

void BM_scaling_w(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbmlab::analytic::scaling_w(x));
        x = x > 50.0 ? 0.1 : x * 1.1;
    }
}
BENCHMARK(BM_scaling_w);

void BM_occupation_density(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(rbmlab::analytic::occupation_density(2.0, 5.0, 1.0));
}
BENCHMARK(BM_occupation_density);

}  // namespace
