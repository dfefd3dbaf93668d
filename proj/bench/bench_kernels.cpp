// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "bbox/algorithms.hpp"
#include "bbox/harness.hpp"
#include "bbox/reconstruction.hpp"

namespace {

bbox::RankingObservation observation(std::size_t k)
{
    bbox::Rng rng(bbox::split_seed(42, k));
    const bbox::BitString target = bbox::random_bits(k, rng);
    bbox::RankingObservation obs;
    obs.k = k;
    for (std::size_t i = 0; i < bbox::required_samples(k, 16); ++i)
        obs.samples.push_back(bbox::random_bits(k, rng));
    obs.ranks = bbox::induced_ranking(obs.samples, target);
    return obs;
}

void BM_ConsistentTargets(benchmark::State& state)
{
    const auto obs = observation(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(bbox::consistent_targets(obs));
}

void BM_ConsistentTargetsSerial(benchmark::State& state)
{
    const auto obs = observation(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(bbox::consistent_targets_serial(obs));
}

bbox::SweepConfig sweep_config(std::size_t n)
{
    bbox::SweepConfig c;
    c.algo_id = "one-plus-one-mc";
    c.n_list = {n};
    c.trials = 16;
    c.root_seed = 7;
    return c;
}

void BM_Sweep(benchmark::State& state)
{
    const auto c = sweep_config(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(bbox::run_sweep(c));
}

void BM_SweepSerial(benchmark::State& state)
{
    const auto c = sweep_config(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(bbox::run_sweep_serial(c));
}

}  // namespace

BENCHMARK(BM_ConsistentTargets)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConsistentTargetsSerial)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
