#pragma once

#include "zeta/model.hpp"
#include "zeta/simulator.hpp"

#include <cmath>

namespace fx {

inline zeta::ConverterParams reference() { return zeta::ConverterParams::from(zeta::reference_fields()); }

inline zeta::ConverterParams with(void (*edit)(zeta::ParamFields&)) {
    auto f = zeta::reference_fields();
    edit(f);
    return zeta::ConverterParams::from(f);
}

inline double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// One cold-start steady state of the reference point, shared within a binary.
inline const zeta::sim::SteadyState& reference_steady() {
    static const auto ss = zeta::sim::run_to_steady_state(reference(), zeta::sim::SimConfig{});
    return ss;
}

}  // namespace fx
