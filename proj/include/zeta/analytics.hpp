#pragma once

// Closed-form CCM steady-state relations of the converter and the passive
// component design bounds derived from them.
//
// Values marked "estimate" (average magnetizing current, peak device
// currents, clamp-interval length) come from terse closed forms; the
// simulator is the reference for them and crosscheck.hpp reports the
// deviation instead of asserting equality.

#include "zeta/model.hpp"

namespace zeta::analytics {

/// Allowed peak-to-peak capacitor voltage ripple used for capacitor sizing.
class DesignRipple {
public:
    explicit DesignRipple(double v_ppc);
    [[nodiscard]] double v_ppc() const noexcept { return v_ppc_; }

private:
    double v_ppc_;
};

struct CapVoltages {
    double v_c1, v_c2, v_c3, v_c4, v_o;
};

struct DeviceStresses {
    Stress v_s, v_d1, v_d2, v_d3;
};

struct InductorRipples {
    double di_l1, di_lm;
};

struct PeakCurrents {
    double i_d3_peak, i_d2_peak, i_d1_peak, i_s_peak;
};

struct MinCapacitances {
    double c1_min, c2_min, c3_min, c4_min;
};

/// M = (n + 2D) / (1 - D). Throws std::domain_error outside 0 < D < 1, n > 0.
[[nodiscard]] double gain(double duty, double n);

[[nodiscard]] CapVoltages cap_voltages(const ConverterParams& p);

/// Output current V_o / R_L with V_o taken from the gain relation.
[[nodiscard]] double output_current(const ConverterParams& p);

[[nodiscard]] DeviceStresses device_stresses(const ConverterParams& p);
/// Scalar form; accepts n >= 0 so the n = 0 limit can be evaluated.
[[nodiscard]] DeviceStresses device_stresses(double vin, double duty, double n);

/// Estimate of the average magnetizing current, I_o (2D + n - 1) / D.
[[nodiscard]] double avg_magnetizing_current(const ConverterParams& p);
[[nodiscard]] double avg_magnetizing_current(double i_o, double duty, double n);

[[nodiscard]] InductorRipples inductor_ripples(const ConverterParams& p);

/// Estimates of the peak diode and switch currents.
[[nodiscard]] PeakCurrents peak_currents(const ConverterParams& p);
[[nodiscard]] PeakCurrents peak_currents(const ConverterParams& p, double i_o);

/// L1 || Lm.
[[nodiscard]] double parallel_inductance(double a, double b);

/// Estimate of the combined duration fraction of modes 3 and 4.
[[nodiscard]] double clamp_interval_fraction(const ConverterParams& p);

/// Minimum magnetizing inductance for CCM. Throws std::domain_error when
/// the bound is undefined (no load, or 2D + n - 1 <= 0).
[[nodiscard]] double ccm_min_lm(const ConverterParams& p);
[[nodiscard]] double ccm_min_lm(double vin, double duty, double n, double fs, double i_o);

[[nodiscard]] MinCapacitances min_capacitances(const ConverterParams& p, const DesignRipple& r);
/// Same bounds with an explicit magnetizing inductance and load.
[[nodiscard]] MinCapacitances min_capacitances(double duty, double n, double lm, double rl, double fs,
                                               const DesignRipple& r);

/// Aggregates every closed form. Capacitor minima are filled only when a
/// ripple target is given.
[[nodiscard]] SteadyStateReport full_report(const ConverterParams& p,
                                            std::optional<DesignRipple> r = std::nullopt);

}  // namespace zeta::analytics
