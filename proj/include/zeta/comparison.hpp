#pragma once

// Gain formulas and component counts of the competing step-up topologies.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zeta::comparison {

struct ComponentCounts {
    int switches = 0;
    int diodes = 0;
    int capacitors = 0;
    int inductors = 0;
    bool coupled_inductor = false;
};

enum class Topology { Boost, Ref5, Ref14, Ref15, Ref16, Quadratic, Proposed };

struct TopologyModel {
    Topology id;
    std::string_view key;    // "boost", "ref5", ...
    std::string_view label;
    bool uses_n = false;
    /// Missing when the source table does not list the counts.
    std::optional<ComponentCounts> counts;
};

[[nodiscard]] const std::vector<TopologyModel>& topologies();
[[nodiscard]] const TopologyModel& model(Topology id);
/// Throws std::invalid_argument for an unknown key.
[[nodiscard]] const TopologyModel& model(std::string_view key);

/// Throws std::domain_error outside 0 < duty < 1 or, for n-dependent
/// formulas, n <= 0.
[[nodiscard]] double gain_of(const TopologyModel& t, double duty, double n);

struct GainRow {
    double duty;
    Topology topology;
    double gain;
};

/// Row-major over duty, then topologies in the given order. Serial; the
/// OpenMP version lives in sweep.hpp.
[[nodiscard]] std::vector<GainRow> sweep_gain(const std::vector<Topology>& ts,
                                              const std::vector<double>& duty_grid, double n);

/// a, a+step, ... up to b inclusive (with a tolerance of 1e-9 step).
[[nodiscard]] std::vector<double> duty_grid(double a, double b, double step);

}  // namespace zeta::comparison
