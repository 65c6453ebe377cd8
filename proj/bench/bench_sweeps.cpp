// Serial reference vs OpenMP kernels for the two many-run workloads.

#include "zeta/comparison.hpp"
#include "zeta/sweep.hpp"

#include <benchmark/benchmark.h>

namespace {

std::vector<zeta::comparison::Topology> all_topologies() {
    std::vector<zeta::comparison::Topology> ts;
    for (const auto& t : zeta::comparison::topologies()) ts.push_back(t.id);
    return ts;
}

void BM_GainSweepSerial(benchmark::State& st) {
    const auto ts = all_topologies();
    const auto grid = zeta::comparison::duty_grid(1e-4, 0.9999, 1.0 / static_cast<double>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(zeta::comparison::sweep_gain(ts, grid, 2.0));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(grid.size() * ts.size()));
}

void BM_GainSweepParallel(benchmark::State& st) {
    const auto ts = all_topologies();
    const auto grid = zeta::comparison::duty_grid(1e-4, 0.9999, 1.0 / static_cast<double>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(zeta::sweep::sweep_gain_parallel(ts, grid, 2.0));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(grid.size() * ts.size()));
}

// duty points around the reference design, warm-started
std::vector<zeta::ConverterParams> batch(int count) {
    std::vector<zeta::ConverterParams> ps;
    for (int k = 0; k < count; ++k) {
        auto f = zeta::reference_fields();
        f.duty = 0.45 + 0.3 * k / std::max(1, count - 1);
        ps.push_back(zeta::ConverterParams::from(f));
    }
    return ps;
}

zeta::sim::SimConfig bench_config() {
    zeta::sim::SimConfig c;
    c.steps_per_period = 1000;
    c.convergence_tol = 1e-5;
    c.warm_start = true;
    return c;
}

void BM_BatchSerial(benchmark::State& st) {
    const auto ps = batch(static_cast<int>(st.range(0)));
    const auto cfg = bench_config();
    for (auto _ : st) benchmark::DoNotOptimize(zeta::sweep::simulate_batch_serial(ps, cfg));
}

void BM_BatchParallel(benchmark::State& st) {
    const auto ps = batch(static_cast<int>(st.range(0)));
    const auto cfg = bench_config();
    for (auto _ : st) benchmark::DoNotOptimize(zeta::sweep::simulate_batch(ps, cfg));
}

}  // namespace

BENCHMARK(BM_GainSweepSerial)->Arg(1000)->Arg(100000);
BENCHMARK(BM_GainSweepParallel)->Arg(1000)->Arg(100000);
BENCHMARK(BM_BatchSerial)->Arg(8)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_BatchParallel)->Arg(8)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
