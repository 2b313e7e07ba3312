#include "l1cp/bootstrap.hpp"
#include "l1cp/enhancement.hpp"
#include "l1cp/functional.hpp"
#include "l1cp/rng.hpp"
#include "l1cp/scenarios.hpp"

#include <benchmark/benchmark.h>

using namespace l1cp;

namespace {

FunctionalSample sample(std::size_t n, std::size_t m) {
    ScenarioSpec spec;
    spec.n = n;
    spec.m = m;
    spec.mean_kind = parse_mean_kind("bump");
    spec.kappa = 0.5;
    spec.seed = 1;
    return assemble(spec);
}

void BM_Cusum(benchmark::State& state) {
    const FunctionalSample x = sample(static_cast<std::size_t>(state.range(0)), 101);
    for (auto _ : state) benchmark::DoNotOptimize(argmax_norm(cusum(x), NormKind::L1));
}
BENCHMARK(BM_Cusum)->Arg(100)->Arg(400)->Arg(1600);

void BM_BootstrapMaxStatistics(benchmark::State& state) {
    const FunctionalSample x = sample(static_cast<std::size_t>(state.range(0)), 101);
    const MultiplierBootstrap boot(demean_by_segments(x, x.n() / 2), 5);
    std::uint64_t b = 0;
    for (auto _ : state) benchmark::DoNotOptimize(boot.max_statistics(boot.multipliers(7, Stream::ClassicalBootstrap, b++)));
}
BENCHMARK(BM_BootstrapMaxStatistics)->Arg(100)->Arg(400)->Arg(1600);

void BM_BlockLength(benchmark::State& state) {
    const FunctionalSample x = sample(static_cast<std::size_t>(state.range(0)), 101);
    for (auto _ : state) benchmark::DoNotOptimize(select_block_length(x));
}
BENCHMARK(BM_BlockLength)->Arg(100)->Arg(1600);

void BM_ClassicalTest(benchmark::State& state) {
    const FunctionalSample x = sample(static_cast<std::size_t>(state.range(0)), 101);
    BootstrapConfig cfg;
    cfg.replicates = 200;
    for (auto _ : state) benchmark::DoNotOptimize(classical_test(x, 0.05, cfg));
}
BENCHMARK(BM_ClassicalTest)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_EnhancedTest(benchmark::State& state) {
    const FunctionalSample x = sample(200, 101);
    BootstrapConfig cfg;
    cfg.replicates = 200;
    for (auto _ : state) benchmark::DoNotOptimize(enhanced_test(x, 0.05, cfg, EnhancementConfig{}));
}
BENCHMARK(BM_EnhancedTest)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
