#pragma once

// Piecewise-affine state equations of the converter for every conduction
// pattern of the switch and the three diodes.
//
// Network (node names used throughout):
//
//   Vin+ --S--> A          L1: A -> gnd                (i_l1)
//   C4: A(-) .. B(+)       D1: gnd -> B                (clamp)
//   Lk: B -> B'            Lm: B' -> E, primary in parallel with Lm
//   C1: E(+) .. gnd        secondary: P(dot) .. Y, v_P - v_Y = n v_Lm
//   D2: E -> P             D3: P -> O
//   C2: A(-) .. Y(+)       C3: Y(-) .. O(+)            R_L: O .. A
//
// Primary current i_lk = i_lm + n i_sec, i_sec leaving the dotted terminal.
// Device currents reconstructed from the states:
//
//   i_d2 = -i_sec when D2 conducts, i_d3 = +i_sec when D3 conducts
//   switch (S on) or clamp diode (D1 on):  i_l1 + i_lk - i_d2
//   i_c1 = i_lk - i_d2   i_c2 = i_d2 - i_o   i_c3 = i_d3 - i_o   i_c4 = i_d1 - i_lk
//
// With S on the switch node sits at Vin, with D1 on it sits at -v_c4, and
// with both open it floats at the value that keeps the D1 current at zero.
// The magnetizing voltage is fixed by whichever secondary diode conducts, or
// by i_lk = i_lm when neither does.

#include "zeta/model.hpp"

#include <vector>

namespace zeta::sim {

/// Node voltages, branch voltages and device currents at one instant.
struct Branches {
    double v_a = 0.0;    // switch node
    double v_lm = 0.0;   // magnetizing branch
    double v_l1 = 0.0;
    double v_lk = 0.0;
    double v_sw = 0.0;   // across the open switch, Vin - v_a
    double i_sec = 0.0;
    double i_s = 0.0;
    double i_d1 = 0.0;
    double i_d2 = 0.0;
    double i_d3 = 0.0;
    double i_o = 0.0;
    double i_c1 = 0.0, i_c2 = 0.0, i_c3 = 0.0, i_c4 = 0.0;
    /// Forward (anode minus cathode) voltage of each diode.
    double vf_d1 = 0.0, vf_d2 = 0.0, vf_d3 = 0.0;
    StateArray dx{};
};

using Matrix7 = std::array<std::array<double, kStateCount>, kStateCount>;

/// dx/dt = a x + b for one conduction pattern.
struct AffineSystem {
    Matrix7 a{};
    StateArray b{};

    [[nodiscard]] StateArray apply(const StateArray& x) const;
};

/// Circuit equations bound to one parameter set. Requires lk > 0; the
/// ideal-coupling limit has no finite leakage dynamics to integrate.
class Circuit {
public:
    explicit Circuit(const ConverterParams& p);

    [[nodiscard]] const ConverterParams& params() const noexcept { return p_; }

    /// Hand-derived evaluation of every branch quantity.
    [[nodiscard]] Branches evaluate(const Conduction& c, const StateArray& x) const;

    /// Cached affine system of a pattern (built from evaluate()).
    [[nodiscard]] const AffineSystem& system(const Conduction& c) const;

    [[nodiscard]] StateArray derivative(const Conduction& c, const StateArray& x) const {
        return system(c).apply(x);
    }

private:
    ConverterParams p_;
    std::array<AffineSystem, 16> systems_{};
};

[[nodiscard]] AffineSystem mode_system(Mode m, const ConverterParams& p);

/// One classical fourth-order Runge-Kutta step.
[[nodiscard]] StateArray rk4_step(const AffineSystem& sys, const StateArray& x, double h);

/// Quantities whose sign change ends a conduction interval.
enum class Guard { GateOff, GateOn, D1Current, D2Current, D3Current, D1Voltage, D2Voltage, D3Voltage };

struct Transition {
    Guard guard;
    Mode next;
};

/// Expected exits of a named mode in the CCM cycle:
///   M1 --(i_d2 -> 0, i.e. i_lk - i_lm rising through 0)--> M2
///   M2 --(gate off at D T)--> M3
///   M3 --(i_d3 -> 0, i.e. i_lk - i_lm falling through 0)--> M4
///   M4 --(clamp current i_l1 + i_lk - i_d2 -> 0)--> M5
///   M5 --(gate on at T)--> M1
[[nodiscard]] std::vector<Transition> transition_events(Mode m);

/// Every state guard that must stay non-negative while `c` is active:
/// currents of conducting diodes and reverse voltages of blocking ones.
[[nodiscard]] std::vector<Guard> active_guards(const Conduction& c);

/// Value that is >= 0 while the guard has not fired.
[[nodiscard]] double guard_value(Guard g, const Branches& b);

[[nodiscard]] std::string guard_name(Guard g);

}  // namespace zeta::sim
