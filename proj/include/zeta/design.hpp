#pragma once

// Component sizing from converter requirements, and closed-loop checking of
// a sizing through the simulator.

#include "zeta/analytics.hpp"
#include "zeta/model.hpp"
#include "zeta/simulator.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zeta::design {

inline constexpr double kDefaultMaxDuty = 0.9;

/// Raised by solve_duty when the duty falls outside (0, d_max].
class InfeasibleDuty : public std::domain_error {
public:
    InfeasibleDuty(double duty, std::string bound);
    [[nodiscard]] double duty() const noexcept { return duty_; }
    [[nodiscard]] const std::string& bound() const noexcept { return bound_; }

private:
    double duty_;
    std::string bound_;
};

/// D = (M - n) / (M + 2).
[[nodiscard]] double solve_duty(double m_target, double n, double d_max = kDefaultMaxDuty);

struct DesignSpec {
    double vin = 0.0;
    double v_o_target = 0.0;
    std::optional<double> rl;   // exactly one of rl / p_o
    std::optional<double> p_o;
    double fs = 0.0;
    double v_ppc = 0.0;
    /// L1 is chosen so its peak-to-peak ripple is this fraction of the
    /// average input current.
    double ripple_fraction = 0.4;
    std::vector<double> n_candidates{1.0, 2.0, 3.0};
    double d_max = kDefaultMaxDuty;
    double lm_margin = 2.0;
    double cap_margin = 2.0;
    /// Leakage assumed for verification, as a fraction of the chosen Lm.
    double lk_fraction = 1.0 / 300.0;

    /// Throws ValidationError listing every violation.
    void validate() const;
    [[nodiscard]] double load_resistance() const;
};

struct Candidate {
    double n = 0.0;
    bool feasible = false;
    std::string reason;  // why infeasible

    double duty = 0.0;
    double gain = 0.0;
    double i_o = 0.0;
    double i_in_avg = 0.0;
    double rl = 0.0;

    double lm_min = 0.0;
    double lm = 0.0;
    double l1 = 0.0;
    double lk = 0.0;
    double ccm_margin = 0.0;  // lm / lm_min

    analytics::MinCapacitances c_min{};
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;

    double v_s_stress = 0.0, v_d1_stress = 0.0, v_d2_stress = 0.0, v_d3_stress = 0.0;
    double i_s_peak = 0.0, i_d1_peak = 0.0, i_d2_peak = 0.0, i_d3_peak = 0.0;
    double di_l1 = 0.0, di_lm = 0.0;
};

struct DesignResult {
    DesignSpec spec;
    std::vector<Candidate> candidates;  // in n_candidates order
    [[nodiscard]] bool any_feasible() const;
};

[[nodiscard]] DesignResult size_converter(const DesignSpec& spec);

struct VerifyOptions {
    /// Capacitors simulated at cap_scale x the minima (chosen values use cap_margin).
    std::optional<double> cap_scale;
    /// Magnetizing inductance simulated at lm_scale x lm_min instead of the chosen lm.
    std::optional<double> lm_scale;
};

struct Verification {
    double n = 0.0;
    bool simulated = false;
    std::string error;
    Regime regime = Regime::CCM;
    bool converged = false;
    double gain_target = 0.0;
    double gain_measured = 0.0;
    double gain_error = 0.0;
    std::array<double, 4> dv_c{};
    double v_ppc = 0.0;
    double max_ripple_ratio = 0.0;  // max dv_c / v_ppc
    /// Inductor currents never lose their path (regime is not DCM).
    bool ccm = false;
    /// The strict five-mode cycle was observed.
    bool five_mode = false;
};

/// Parameter set of a feasible candidate as simulated by verify_design.
[[nodiscard]] ConverterParams candidate_params(const DesignSpec& s, const Candidate& c,
                                               const VerifyOptions& opt = {});

/// Simulates every feasible candidate (concurrently). A failing candidate is
/// reported in its own entry. Infeasible candidates are skipped.
[[nodiscard]] std::vector<Verification> verify_design(const DesignResult& r, const sim::SimConfig& cfg,
                                                      const VerifyOptions& opt = {});

}  // namespace zeta::design
