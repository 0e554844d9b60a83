// Serial reference against the OpenMP batch and sweep kernels.

#include <benchmark/benchmark.h>

#include "outbreak/batch.hpp"
#include "outbreak/sweep.hpp"

using namespace outbreak;

namespace {

NondimParams bench_params()
{
    NondimParams p = reference_params();
    p.h = 0.88;
    p.sigma1 = p.sigma2 = 0.015;
    return p;
}

BatchConfig bench_config(benchmark::State& state)
{
    return {static_cast<std::size_t>(state.range(0)), 1e-3, 100.0, 1};
}

void report(benchmark::State& state, const BatchResult& r)
{
    state.counters["steps/s"] = benchmark::Counter(static_cast<double>(r.total_steps()),
                                                   benchmark::Counter::kIsIterationInvariantRate);
    state.counters["threads"] = max_threads();
}

void BM_BatchSerial(benchmark::State& state)
{
    const NondimParams p = bench_params();
    const BatchConfig cfg = bench_config(state);
    BatchResult r;
    for (auto _ : state) {
        r = run_batch_serial(p, cfg);
        benchmark::DoNotOptimize(r);
    }
    report(state, r);
}

void BM_BatchParallel(benchmark::State& state)
{
    const NondimParams p = bench_params();
    const BatchConfig cfg = bench_config(state);
    BatchResult r;
    for (auto _ : state) {
        r = run_batch_parallel(p, cfg);
        benchmark::DoNotOptimize(r);
    }
    report(state, r);
}

SweepConfig sweep_config()
{
    SweepConfig cfg;
    cfg.axis1 = parse_axis("mu:0.002:0.03:4");
    cfg.axis2 = parse_axis("sigma:0.01:0.04:4");
    cfg.sim.t_end = 50.0;
    return cfg;
}

void BM_SweepSerial(benchmark::State& state)
{
    const SweepConfig cfg = sweep_config();
    std::vector<std::size_t> order(16);
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_sweep_serial(cfg, order));
    }
}

void BM_SweepParallel(benchmark::State& state)
{
    const SweepConfig cfg = sweep_config();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_sweep(cfg));
    }
}

}  // namespace

BENCHMARK(BM_BatchSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
