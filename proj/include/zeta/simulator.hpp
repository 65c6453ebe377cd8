#pragma once

// Event-driven time-domain simulation with ideal switch and diodes.
//
// Each period is integrated on a uniform RK4 grid. The gate edges at D T and
// T are scheduled exactly; diode turn-on/turn-off instants are found by
// bisection on the guard values of circuit.hpp and the state is advanced
// exactly to them before the conduction pattern changes.

#include "zeta/circuit.hpp"
#include "zeta/model.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace zeta::sim {

struct SimConfig {
    int steps_per_period = 4000;
    int max_periods = 20000;
    double convergence_tol = 1e-6;
    /// Event time localization, fraction of the period.
    double event_tol = 1e-9;
    /// Start from the closed-form operating point instead of zero state.
    bool warm_start = false;

    /// Throws ValidationError when a field is out of range.
    void validate() const;
};

enum class SimErrorKind { BlowUp, Chattering, NonConvergence, Topology };

class SimulationError : public std::runtime_error {
public:
    SimulationError(SimErrorKind kind, const std::string& what, double residual = 0.0)
        : std::runtime_error(what), kind_(kind), residual_(residual) {}
    [[nodiscard]] SimErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] double residual() const noexcept { return residual_; }

private:
    SimErrorKind kind_;
    double residual_;
};

struct TracePoint {
    StateVector x;
    /// Pattern active from this point until the next one.
    Conduction pattern;
    bool event = false;
};

struct Event {
    double t = 0.0;
    Conduction from;
    Conduction to;
};

/// Samples of one period: the uniform grid plus one extra point at every
/// event, so each sub-interval between consecutive points has a single
/// conduction pattern.
struct Trace {
    double t0 = 0.0;
    double period = 0.0;
    std::vector<TracePoint> points;
    std::vector<Event> events;
};

struct PeriodResult {
    StateVector x_end;
    Conduction end_pattern;
    Trace trace;
    int transitions = 0;
};

/// Integrates one PWM period starting at x0.t with the gate turning on.
[[nodiscard]] PeriodResult integrate_period(const ConverterParams& p, const SimConfig& cfg,
                                            const StateVector& x0);

/// Closed-form operating point at the start of a period, used for warm start.
[[nodiscard]] StateVector analytic_initial_state(const ConverterParams& p);

struct SteadyState {
    Trace trace;
    SimMetrics metrics;
};

/// Repeats integrate_period until the per-period relative state change is
/// below cfg.convergence_tol, then measures the final period and classifies
/// its conduction sequence. Throws NonConvergence after cfg.max_periods.
[[nodiscard]] SteadyState run_to_steady_state(const ConverterParams& p, const SimConfig& cfg);

/// Runs exactly `periods` periods without a convergence test.
[[nodiscard]] SteadyState run_periods(const ConverterParams& p, const SimConfig& cfg, int periods);

/// Period averages, ripples, peaks and mode fractions of a trace.
[[nodiscard]] SimMetrics extract_metrics(const Trace& trace, const ConverterParams& p);

/// Conduction sequence of a trace with durations (fractions of the period).
struct Segment {
    Conduction pattern;
    double fraction = 0.0;
};
[[nodiscard]] std::vector<Segment> conduction_sequence(const Trace& trace);

/// True when the sequence stays in the CCM cycle (missing modes allowed).
[[nodiscard]] bool is_ccm_sequence(const std::vector<Segment>& seq);

[[nodiscard]] Regime classify_sequence(const std::vector<Segment>& seq);

}  // namespace zeta::sim
