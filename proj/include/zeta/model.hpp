#pragma once

// Parameter, state and result types shared by the analytics, simulator and
// design layers. All quantities are SI base units (V, A, H, F, Hz, s, ohm).

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zeta {

/// One range violation found while validating input parameters.
struct Violation {
    std::string field;
    double value = 0.0;
    std::string bound;

    [[nodiscard]] std::string message() const;
};

/// Raised when a parameter set fails validation. Carries every violation,
/// not just the first one.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Violation> violations);
    [[nodiscard]] const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Raw field values of a converter; see ConverterParams for the checked form.
struct ParamFields {
    double vin = 0.0;
    double duty = 0.0;
    double n = 0.0;
    double l1 = 0.0;
    double lm = 0.0;
    double lk = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
    double rl = 0.0;
    double fs = 0.0;
};

/// Default load used when a parameter file omits nothing but the caller
/// wants the reference operating point (I_o = 1 A at V_o = 240 V).
inline constexpr double kDefaultLoadOhms = 240.0;

/// Reference operating point: 30 V in, D = 0.6, n = 2, 40 kHz.
[[nodiscard]] ParamFields reference_fields();

/// Validated, immutable electrical parameter set of the converter.
class ConverterParams {
public:
    /// Throws ValidationError listing every out-of-range field.
    static ConverterParams from(const ParamFields& f);

    [[nodiscard]] const ParamFields& fields() const noexcept { return f_; }

    [[nodiscard]] double vin() const noexcept { return f_.vin; }
    [[nodiscard]] double duty() const noexcept { return f_.duty; }
    [[nodiscard]] double n() const noexcept { return f_.n; }
    [[nodiscard]] double l1() const noexcept { return f_.l1; }
    [[nodiscard]] double lm() const noexcept { return f_.lm; }
    [[nodiscard]] double lk() const noexcept { return f_.lk; }
    [[nodiscard]] double c1() const noexcept { return f_.c1; }
    [[nodiscard]] double c2() const noexcept { return f_.c2; }
    [[nodiscard]] double c3() const noexcept { return f_.c3; }
    [[nodiscard]] double c4() const noexcept { return f_.c4; }
    [[nodiscard]] double rl() const noexcept { return f_.rl; }
    [[nodiscard]] double fs() const noexcept { return f_.fs; }

    [[nodiscard]] double period() const noexcept { return 1.0 / f_.fs; }
    /// k = lm / (lm + lk); exactly 1 when lk == 0.
    [[nodiscard]] double coupling() const noexcept { return f_.lm / (f_.lm + f_.lk); }

private:
    explicit ConverterParams(const ParamFields& f) : f_(f) {}
    ParamFields f_;
};

/// Returns the violations of `f` without throwing (empty when valid).
[[nodiscard]] std::vector<Violation> check_fields(const ParamFields& f);

/// Names of the parameter-file keys, in canonical order.
[[nodiscard]] const std::array<std::string_view, 12>& param_keys();

/// Builds ConverterParams from a key/value map. Missing keys, unknown keys and
/// range errors are all reported in one ValidationError.
[[nodiscard]] ConverterParams validate_params(const std::map<std::string, double>& raw);

/// Index of each continuous state inside StateArray.
enum StateIndex : std::size_t {
    kIL1 = 0,
    kILk = 1,
    kILm = 2,
    kVC1 = 3,
    kVC2 = 4,
    kVC3 = 5,
    kVC4 = 6,
    kStateCount = 7,
};

using StateArray = std::array<double, kStateCount>;

/// Continuous state of the converter at time t.
struct StateVector {
    double t = 0.0;
    double i_l1 = 0.0;
    double i_lk = 0.0;
    double i_lm = 0.0;
    double v_c1 = 0.0;
    double v_c2 = 0.0;
    double v_c3 = 0.0;
    double v_c4 = 0.0;

    [[nodiscard]] static StateVector from_array(double t, const StateArray& x);
    [[nodiscard]] StateArray to_array() const;

    /// Secondary winding current, positive out of the dotted terminal.
    [[nodiscard]] double i_secondary(double n) const { return (i_lk - i_lm) / n; }
    [[nodiscard]] double v_o() const { return v_c2 + v_c3; }
    [[nodiscard]] double i_o(double rl) const { return v_o() / rl; }
    [[nodiscard]] bool finite() const;
};

/// The five conduction modes of the CCM switching cycle.
enum class Mode { M1 = 1, M2 = 2, M3 = 3, M4 = 4, M5 = 5 };

/// On/off state of the switch and the three diodes.
struct Conduction {
    bool s_on = false;
    bool d1_on = false;
    bool d2_on = false;
    bool d3_on = false;

    friend bool operator==(const Conduction&, const Conduction&) = default;
};

[[nodiscard]] Conduction pattern_of(Mode m);
/// Mode whose pattern equals `c`, or nullopt for configurations outside the
/// CCM cycle (all-diodes-off and similar DCM states).
[[nodiscard]] std::optional<Mode> mode_of(const Conduction& c);
/// Successor in the cycle M1 -> M2 -> M3 -> M4 -> M5 -> M1.
[[nodiscard]] Mode next_mode(Mode m);
[[nodiscard]] std::string mode_name(Mode m);
[[nodiscard]] std::string pattern_name(const Conduction& c);

inline constexpr std::array<Mode, 5> kAllModes{Mode::M1, Mode::M2, Mode::M3, Mode::M4, Mode::M5};

/// A quantity that is reported as a magnitude with a polarity note.
struct Stress {
    double magnitude = 0.0;
    /// Sign carried by the closed-form expression under the reference
    /// directions used there (-1 for blocking voltages).
    int sign = -1;
};

/// Every closed-form steady-state and design quantity for one parameter set.
struct SteadyStateReport {
    double v_c1 = 0.0, v_c2 = 0.0, v_c3 = 0.0, v_c4 = 0.0, v_o = 0.0;
    double m = 0.0;
    Stress v_s_stress, v_d1_stress, v_d2_stress, v_d3_stress;
    double i_o = 0.0;
    double i_lm_avg = 0.0;  // estimate
    double di_l1 = 0.0, di_lm = 0.0;
    double i_d1_peak = 0.0, i_d2_peak = 0.0, i_d3_peak = 0.0, i_s_peak = 0.0;  // estimates
    double d34 = 0.0;  // estimate
    double lm_min = 0.0;
    bool ccm = false;
    std::optional<double> v_ppc;
    double c1_min = 0.0, c2_min = 0.0, c3_min = 0.0, c4_min = 0.0;
};

/// Operating regime classified from the conduction sequence of a period.
///   CCM       the five-mode cycle M1..M5 (modes of zero duration may be missing)
///   OffCycle  inductor currents stay continuous, but the sequence leaves the
///             cycle (secondary current extinguished while S is on, clamp
///             re-conduction after M5)
///   DCM       an interval with S off and neither D2 nor D3 conducting: the
///             magnetizing current has lost its secondary path
enum class Regime { CCM, OffCycle, DCM };

[[nodiscard]] std::string regime_name(Regime r);

/// Quantities measured over one converged switching period.
struct SimMetrics {
    Regime regime = Regime::CCM;
    bool converged = false;
    int periods = 0;
    double residual = 0.0;

    double v_c1_avg = 0.0, v_c2_avg = 0.0, v_c3_avg = 0.0, v_c4_avg = 0.0, v_o_avg = 0.0;
    double i_l1_avg = 0.0, i_lk_avg = 0.0, i_lm_avg = 0.0, i_o_avg = 0.0;
    double gain = 0.0;

    double di_l1 = 0.0, di_lk = 0.0, di_lm = 0.0;
    double dv_c1 = 0.0, dv_c2 = 0.0, dv_c3 = 0.0, dv_c4 = 0.0;

    double i_s_peak = 0.0, i_d1_peak = 0.0, i_d2_peak = 0.0, i_d3_peak = 0.0;
    double i_d1_avg = 0.0, i_d2_avg = 0.0, i_d3_avg = 0.0, i_s_avg = 0.0;

    std::array<double, 4> i_c_avg{};   // C1..C4
    std::array<double, 4> i_c_peak{};  // max |i_c| over the period
    std::array<double, 3> v_l_avg{};   // L1, Lk, Lm

    /// Duration fraction of M1..M5; index 0 of the vector is M1.
    std::array<double, 5> mode_fraction{};
    /// Duration fraction spent outside the five named modes.
    double off_cycle_fraction = 0.0;
    std::vector<std::string> sequence;
};

}  // namespace zeta
