#include "zeta/sweep.hpp"

#include <exception>

namespace zeta::sweep {

namespace {

BatchItem run_one(const ConverterParams& p, const sim::SimConfig& cfg) {
    BatchItem item;
    try {
        item.metrics = sim::run_to_steady_state(p, cfg).metrics;
        item.ok = true;
    } catch (const sim::SimulationError& e) {
        item.error = e.what();
        item.kind = e.kind();
    } catch (const std::exception& e) {
        item.error = e.what();
    }
    return item;
}

}  // namespace

std::vector<comparison::GainRow> sweep_gain_parallel(const std::vector<comparison::Topology>& ts,
                                                     const std::vector<double>& grid, double n) {
    const auto nt = static_cast<long>(ts.size());
    const long total = static_cast<long>(grid.size()) * nt;
    std::vector<comparison::GainRow> rows(static_cast<std::size_t>(total));
    // resolve models up front; gain_of may throw, which must not escape the region
    std::vector<const comparison::TopologyModel*> models;
    for (auto id : ts) models.push_back(&comparison::model(id));
    for (double d : grid) {
        for (const auto* m : models) (void)comparison::gain_of(*m, d, n);
    }
#pragma omp parallel for schedule(static)
    for (long k = 0; k < total; ++k) {
        const auto i = static_cast<std::size_t>(k / nt);
        const auto j = static_cast<std::size_t>(k % nt);
        rows[static_cast<std::size_t>(k)] = {grid[i], ts[j], comparison::gain_of(*models[j], grid[i], n)};
    }
    return rows;
}

std::vector<BatchItem> simulate_batch(const std::vector<ConverterParams>& ps, const sim::SimConfig& cfg) {
    std::vector<BatchItem> out(ps.size());
    const auto count = static_cast<long>(ps.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long k = 0; k < count; ++k) {
        out[static_cast<std::size_t>(k)] = run_one(ps[static_cast<std::size_t>(k)], cfg);
    }
    return out;
}

std::vector<BatchItem> simulate_batch_serial(const std::vector<ConverterParams>& ps, const sim::SimConfig& cfg) {
    std::vector<BatchItem> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back(run_one(p, cfg));
    return out;
}

}  // namespace zeta::sweep
