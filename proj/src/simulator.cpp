#include "zeta/simulator.hpp"

#include "zeta/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace zeta::sim {

namespace {

constexpr int kMaxTransitionsPerPeriod = 50;
// Upper bound on guard events processed per period, including events that
// leave the pattern unchanged.
constexpr int kMaxEventsPerPeriod = 200;

bool all_finite(const StateArray& x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

class PeriodIntegrator {
public:
    PeriodIntegrator(const ConverterParams& p, const SimConfig& cfg)
        : circuit_(p), cfg_(cfg), period_(p.period()), h_(period_ / cfg.steps_per_period) {
        const double d = p.duty();
        const double i_ref = std::max(p.vin() / p.rl(), d * p.vin() / (p.l1() * p.fs()));
        const double v_ref = p.vin() / (1.0 - d);
        eps_i_ = std::max(1e-6 * i_ref, 1e-15);
        eps_v_ = std::max(1e-6 * v_ref, 1e-15);
        scale_floor_i_ = std::max(1e-9 * i_ref, 1e-300);
        scale_floor_v_ = std::max(1e-9 * v_ref, 1e-300);
    }

    PeriodResult run(const StateVector& x0, std::optional<Conduction> carry, bool record) {
        PeriodResult out;
        out.trace.t0 = x0.t;
        out.trace.period = period_;
        if (record) out.trace.points.reserve(static_cast<std::size_t>(cfg_.steps_per_period) + 32);

        transitions_ = 0;
        events_ = 0;
        max_abs_.fill(0.0);

        StateArray x = x0.to_array();
        if (!all_finite(x)) throw SimulationError(SimErrorKind::BlowUp, "non-finite initial state");
        track(x);

        const double t0 = x0.t;
        Conduction c;
        if (carry) {
            Conduction on = *carry;
            on.s_on = true;
            on.d1_on = false;
            c = resolve(on, x);
            if (!(c == *carry)) note_transition(out, t0, *carry, c);
        } else {
            c = resolve(Conduction{true, false, false, false}, x);
        }
        if (record) out.trace.points.push_back({StateVector::from_array(t0, x), c, carry.has_value()});

        const int steps = cfg_.steps_per_period;
        const double t_off = t0 + circuit_.params().duty() * period_;
        bool gate_on = true;
        double t = t0;
        for (int k = 0; k < steps; ++k) {
            const double t_next = (k + 1 == steps) ? t0 + period_ : t0 + (k + 1) * h_;
            if (gate_on && t_off <= t_next + 1e-12 * period_) {
                advance(t, x, c, t_off, k, out, record);
                gate_on = false;
                Conduction off = c;
                off.s_on = false;
                const auto b = circuit_.evaluate(c, x);
                const double i_path = b.i_s;
                if (i_path < -eps_i_) {
                    std::ostringstream os;
                    os << "negative switch current " << i_path << " A at turn-off (t=" << t << ")";
                    throw SimulationError(SimErrorKind::Topology, os.str());
                }
                off.d1_on = i_path > eps_i_;
                off = resolve(off, x);
                note_transition(out, t, c, off);
                c = off;
                if (record) out.trace.points.push_back({StateVector::from_array(t, x), c, true});
            }
            advance(t, x, c, t_next, k, out, record);
            t = t_next;
            if (record) out.trace.points.push_back({StateVector::from_array(t, x), c, false});
        }
        out.x_end = StateVector::from_array(t0 + period_, x);
        out.end_pattern = c;
        out.transitions = transitions_;
        return out;
    }

    /// Largest per-state |change| over one period relative to the state's
    /// magnitude during that period.
    [[nodiscard]] double residual(const StateVector& a, const StateVector& b) const {
        const auto xa = a.to_array();
        const auto xb = b.to_array();
        double r = 0.0;
        for (std::size_t i = 0; i < kStateCount; ++i) {
            const double floor = i <= kILm ? scale_floor_i_ : scale_floor_v_;
            r = std::max(r, std::fabs(xb[i] - xa[i]) / std::max(max_abs_[i], floor));
        }
        return r;
    }

private:
    void track(const StateArray& x) {
        for (std::size_t i = 0; i < kStateCount; ++i) max_abs_[i] = std::max(max_abs_[i], std::fabs(x[i]));
    }

    void note_transition(PeriodResult& out, double t, const Conduction& from, const Conduction& to) {
        if (from == to) return;
        ++transitions_;
        if (transitions_ > kMaxTransitionsPerPeriod) {
            std::ostringstream os;
            os << "chattering: more than " << kMaxTransitionsPerPeriod << " mode transitions in one period (t="
               << t << ", " << pattern_name(from) << " -> " << pattern_name(to) << ")";
            throw SimulationError(SimErrorKind::Chattering, os.str());
        }
        if (!out.trace.events.empty() && out.trace.events.back().t >= t) {
            // simultaneous toggles collapse into one event
            out.trace.events.back().to = to;
        } else {
            out.trace.events.push_back({t, from, to});
        }
    }

    [[nodiscard]] Conduction resolve(Conduction c, const StateArray& x) const {
        if (c.s_on) c.d1_on = false;
        const double n = circuit_.params().n();
        for (int iter = 0; iter < 6; ++iter) {
            const Conduction before = c;
            const auto b = circuit_.evaluate(c, x);
            const double i_sec = (x[kILk] - x[kILm]) / n;
            if (!c.d2_on && !c.d3_on) {
                if (i_sec > eps_i_ || (std::fabs(i_sec) <= eps_i_ && b.vf_d3 > eps_v_)) {
                    c.d3_on = true;
                } else if (i_sec < -eps_i_ || (std::fabs(i_sec) <= eps_i_ && b.vf_d2 > eps_v_)) {
                    c.d2_on = true;
                }
            } else if (c.d2_on && i_sec > eps_i_) {
                c.d2_on = false;
                c.d3_on = true;
            } else if (c.d3_on && i_sec < -eps_i_) {
                c.d3_on = false;
                c.d2_on = true;
            }
            if (!c.s_on) {
                const auto bc = circuit_.evaluate(c, x);
                const double i_path = x[kIL1] + x[kILk] - bc.i_d2;
                if (!c.d1_on && (i_path > eps_i_ || bc.vf_d1 > eps_v_)) {
                    c.d1_on = true;
                } else if (c.d1_on && i_path < -eps_i_) {
                    c.d1_on = false;
                }
            }
            if (c == before) break;
        }
        return c;
    }

    [[nodiscard]] bool fired(const std::vector<Guard>& guards, const std::vector<double>& g0,
                             const Branches& b) const {
        for (std::size_t i = 0; i < guards.size(); ++i) {
            const double g = guard_value(guards[i], b);
            if (g < 0.0 && g < g0[i]) return true;
        }
        return false;
    }

    void advance(double& t, StateArray& x, Conduction& c, double t_target, int step, PeriodResult& out,
                 bool record) {
        const double tiny = 1e-13 * period_;
        while (t_target - t > tiny) {
            const double h = t_target - t;
            const auto& sys = circuit_.system(c);
            const auto guards = active_guards(c);
            const auto b0 = circuit_.evaluate(c, x);
            std::vector<double> g0(guards.size());
            for (std::size_t i = 0; i < guards.size(); ++i) g0[i] = guard_value(guards[i], b0);

            StateArray xe = rk4_step(sys, x, h);
            if (!all_finite(xe)) {
                std::ostringstream os;
                os << "numerical blow-up at step " << step << " in " << pattern_name(c) << " (t=" << t << ")";
                throw SimulationError(SimErrorKind::BlowUp, os.str());
            }
            if (!fired(guards, g0, circuit_.evaluate(c, xe))) {
                x = xe;
                t = t_target;
                track(x);
                return;
            }

            double lo = 0.0;
            double hi = h;
            const double width = cfg_.event_tol * period_;
            while (hi - lo > width) {
                const double mid = 0.5 * (lo + hi);
                if (fired(guards, g0, circuit_.evaluate(c, rk4_step(sys, x, mid)))) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            x = rk4_step(sys, x, hi);
            t += hi;
            track(x);

            if (++events_ > kMaxEventsPerPeriod) {
                std::ostringstream os;
                os << "chattering: guard events do not settle in " << pattern_name(c) << " (t=" << t << ")";
                throw SimulationError(SimErrorKind::Chattering, os.str());
            }

            const auto be = circuit_.evaluate(c, x);
            Conduction next = c;
            for (std::size_t i = 0; i < guards.size(); ++i) {
                const double g = guard_value(guards[i], be);
                if (!(g < 0.0 && g < g0[i])) continue;
                switch (guards[i]) {
                    case Guard::D1Current: next.d1_on = false; break;
                    case Guard::D2Current: next.d2_on = false; break;
                    case Guard::D3Current: next.d3_on = false; break;
                    case Guard::D1Voltage: next.d1_on = true; break;
                    case Guard::D2Voltage:
                        next.d2_on = true;
                        next.d3_on = false;
                        break;
                    case Guard::D3Voltage:
                        next.d3_on = true;
                        next.d2_on = false;
                        break;
                    default: break;
                }
            }
            next = resolve(next, x);
            if (!(next == c)) {
                note_transition(out, t, c, next);
                c = next;
                if (record) out.trace.points.push_back({StateVector::from_array(t, x), c, true});
            }
        }
        t = t_target;
    }

    Circuit circuit_;
    SimConfig cfg_;
    double period_;
    double h_;
    double eps_i_ = 0.0;
    double eps_v_ = 0.0;
    double scale_floor_i_ = 0.0;
    double scale_floor_v_ = 0.0;
    int transitions_ = 0;
    int events_ = 0;
    StateArray max_abs_{};
};

SteadyState finish(const Trace& trace, const ConverterParams& p, bool converged, int periods, double residual) {
    SteadyState out;
    out.trace = trace;
    out.metrics = extract_metrics(trace, p);
    out.metrics.converged = converged;
    out.metrics.periods = periods;
    out.metrics.residual = residual;
    return out;
}

}  // namespace

void SimConfig::validate() const {
    std::vector<Violation> v;
    if (steps_per_period < 200) v.push_back({"steps_per_period", double(steps_per_period), ">= 200"});
    if (max_periods < 1) v.push_back({"max_periods", double(max_periods), ">= 1"});
    if (!(convergence_tol > 0.0)) v.push_back({"convergence_tol", convergence_tol, "> 0"});
    if (!(event_tol > 0.0 && event_tol < 1e-3)) v.push_back({"event_tol", event_tol, "(0, 1e-3)"});
    if (!v.empty()) throw ValidationError(std::move(v));
}

PeriodResult integrate_period(const ConverterParams& p, const SimConfig& cfg, const StateVector& x0) {
    cfg.validate();
    PeriodIntegrator integ(p, cfg);
    return integ.run(x0, std::nullopt, true);
}

StateVector analytic_initial_state(const ConverterParams& p) {
    const auto v = analytics::cap_voltages(p);
    const auto rip = analytics::inductor_ripples(p);
    const double i_o = v.v_o / p.rl();
    const double m = v.v_o / p.vin();
    StateVector x;
    // Charge balance of C1, C2, C4 and power balance put the L1 average at
    // (M + 1) I_o and the magnetizing average at I_o; the period starts at
    // their minima, with D1 just released so i_l1 + i_lk - i_d2 = 0.
    x.i_l1 = (m + 1.0) * i_o - 0.5 * rip.di_l1;
    x.i_lm = i_o - 0.5 * rip.di_lm;
    x.i_lk = (x.i_lm - p.n() * x.i_l1) / (p.n() + 1.0);
    x.v_c1 = v.v_c1;
    x.v_c2 = v.v_c2;
    x.v_c3 = v.v_c3;
    x.v_c4 = v.v_c4;
    return x;
}

SteadyState run_to_steady_state(const ConverterParams& p, const SimConfig& cfg) {
    cfg.validate();
    PeriodIntegrator integ(p, cfg);
    StateVector x = cfg.warm_start ? analytic_initial_state(p) : StateVector{};
    std::optional<Conduction> carry;
    double residual = std::numeric_limits<double>::infinity();
    PeriodResult last;
    for (int k = 1; k <= cfg.max_periods; ++k) {
        last = integ.run(x, carry, true);
        residual = integ.residual(x, last.x_end);
        x = last.x_end;
        carry = last.end_pattern;
        if (residual < cfg.convergence_tol) return finish(last.trace, p, true, k, residual);
    }
    std::ostringstream os;
    os << "no periodic steady state after " << cfg.max_periods << " periods (residual " << residual << ")";
    throw SimulationError(SimErrorKind::NonConvergence, os.str(), residual);
}

SteadyState run_periods(const ConverterParams& p, const SimConfig& cfg, int periods) {
    cfg.validate();
    if (periods < 1) throw ValidationError({{"periods", double(periods), ">= 1"}});
    PeriodIntegrator integ(p, cfg);
    StateVector x = cfg.warm_start ? analytic_initial_state(p) : StateVector{};
    std::optional<Conduction> carry;
    PeriodResult last;
    double residual = 0.0;
    for (int k = 0; k < periods; ++k) {
        last = integ.run(x, carry, true);
        residual = integ.residual(x, last.x_end);
        x = last.x_end;
        carry = last.end_pattern;
    }
    return finish(last.trace, p, residual < cfg.convergence_tol, periods, residual);
}

}  // namespace zeta::sim
