#include "zeta/comparison.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zeta::comparison {

const std::vector<TopologyModel>& topologies() {
    // Counts follow the row labels of the comparison table. The rows for
    // [5] carry no counts in the source.
    static const std::vector<TopologyModel> all{
        {Topology::Boost, "boost", "Conventional boost", false, ComponentCounts{1, 1, 1, 1, false}},
        {Topology::Ref5, "ref5", "[5]", false, std::nullopt},
        {Topology::Ref14, "ref14", "[14]", false, ComponentCounts{1, 4, 5, 1, false}},
        {Topology::Ref15, "ref15", "[15]", true, ComponentCounts{2, 4, 3, 3, true}},
        {Topology::Ref16, "ref16", "[16]", true, ComponentCounts{2, 4, 4, 3, false}},
        {Topology::Quadratic, "quadratic", "Quadratic [10]-[11]", false, ComponentCounts{2, 2, 2, 2, false}},
        {Topology::Proposed, "proposed", "Proposed", true, ComponentCounts{1, 3, 4, 1, true}},
    };
    return all;
}

const TopologyModel& model(Topology id) {
    for (const auto& t : topologies()) {
        if (t.id == id) return t;
    }
    throw std::invalid_argument("unknown topology");
}

const TopologyModel& model(std::string_view key) {
    for (const auto& t : topologies()) {
        if (t.key == key) return t;
    }
    throw std::invalid_argument("unknown topology '" + std::string(key) + "'");
}

double gain_of(const TopologyModel& t, double d, double n) {
    if (!(d > 0.0 && d < 1.0)) throw std::domain_error("duty out of (0,1)");
    if (t.uses_n && !(n > 0.0)) throw std::domain_error("n must be > 0");
    const double off = 1.0 - d;
    switch (t.id) {
        case Topology::Boost: return 1.0 / off;
        case Topology::Ref5: return (2.0 + d) / off;
        case Topology::Ref14: return (1.0 + 2.0 * d) / off;
        case Topology::Ref15: return 2.0 / off + n * d;
        case Topology::Ref16: return (1.0 + n * d) / off;
        case Topology::Quadratic: return 1.0 / (off * off);
        case Topology::Proposed: return (n + 2.0 * d) / off;
    }
    return std::nan("");
}

std::vector<GainRow> sweep_gain(const std::vector<Topology>& ts, const std::vector<double>& grid, double n) {
    std::vector<GainRow> rows;
    rows.reserve(ts.size() * grid.size());
    for (double d : grid) {
        for (auto id : ts) rows.push_back({d, id, gain_of(model(id), d, n)});
    }
    return rows;
}

std::vector<double> duty_grid(double a, double b, double step) {
    if (!(step > 0.0) || !(b >= a)) throw std::domain_error("bad duty range");
    std::vector<double> g;
    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
    // snap to 1e-12 so 0.05 + 11 * 0.05 prints and compares as 0.6
    for (long k = 0; k <= count; ++k) {
        g.push_back(std::round((a + static_cast<double>(k) * step) * 1e12) / 1e12);
    }
    return g;
}

}  // namespace zeta::comparison
