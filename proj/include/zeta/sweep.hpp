#pragma once

// Many-run kernels. Each has an OpenMP version and a serial reference that
// must produce identical output; the tests and the benchmark compare them.

#include "zeta/comparison.hpp"
#include "zeta/model.hpp"
#include "zeta/simulator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zeta::sweep {

/// Same rows, same order as comparison::sweep_gain.
[[nodiscard]] std::vector<comparison::GainRow> sweep_gain_parallel(
    const std::vector<comparison::Topology>& ts, const std::vector<double>& duty_grid, double n);

struct BatchItem {
    bool ok = false;
    SimMetrics metrics;
    std::string error;
    std::optional<sim::SimErrorKind> kind;  // empty for non-simulation errors
};

/// One steady-state run per parameter set. A failing run is recorded in its
/// slot and never aborts the others. Output order follows the input order.
[[nodiscard]] std::vector<BatchItem> simulate_batch(const std::vector<ConverterParams>& ps,
                                                    const sim::SimConfig& cfg);
[[nodiscard]] std::vector<BatchItem> simulate_batch_serial(const std::vector<ConverterParams>& ps,
                                                           const sim::SimConfig& cfg);

}  // namespace zeta::sweep
