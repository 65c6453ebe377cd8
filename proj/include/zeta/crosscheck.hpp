#pragma once

// Side-by-side table of closed-form values and simulator measurements.

#include "zeta/model.hpp"

#include <string>
#include <vector>

namespace zeta {

struct CompareRow {
    std::string quantity;
    double analytic = 0.0;
    double measured = 0.0;
    double rel_error = 0.0;
    /// The closed form is a terse estimate; deviation is recorded, not enforced.
    bool estimate = false;
};

/// |measured - analytic| / |analytic|; absolute difference when analytic is 0.
[[nodiscard]] double relative_error(double analytic, double measured);

/// Rows in fixed order: capacitor voltages, v_o, gain, ripples, diode
/// average currents against I_o, then the estimates (average magnetizing
/// current, peak currents, clamp interval length).
[[nodiscard]] std::vector<CompareRow> cross_validate(const SteadyStateReport& r, const SimMetrics& m);

}  // namespace zeta
