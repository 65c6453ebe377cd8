#include "zeta/analytics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zeta::analytics {

namespace {

void check_duty_n(double duty, double n, bool allow_zero_n) {
    if (!(duty > 0.0 && duty < 1.0)) {
        throw std::domain_error("duty " + std::to_string(duty) + " out of (0,1)");
    }
    if (!(allow_zero_n ? n >= 0.0 : n > 0.0)) {
        throw std::domain_error("n " + std::to_string(n) + (allow_zero_n ? " must be >= 0" : " must be > 0"));
    }
}

}  // namespace

DesignRipple::DesignRipple(double v_ppc) : v_ppc_(v_ppc) {
    if (!(std::isfinite(v_ppc) && v_ppc > 0.0)) {
        throw ValidationError({{"v_ppc", v_ppc, "> 0"}});
    }
}

double gain(double duty, double n) {
    check_duty_n(duty, n, false);
    return (n + 2.0 * duty) / (1.0 - duty);
}

CapVoltages cap_voltages(const ConverterParams& p) {
    const double d = p.duty();
    const double r = d / (1.0 - d);
    CapVoltages v{};
    v.v_c4 = r * p.vin();
    v.v_c1 = r * p.vin();
    v.v_c2 = (p.n() + 2.0) * r * p.vin();
    v.v_c3 = p.n() * p.vin();
    v.v_o = v.v_c2 + v.v_c3;
    return v;
}

double output_current(const ConverterParams& p) { return cap_voltages(p).v_o / p.rl(); }

DeviceStresses device_stresses(double vin, double duty, double n) {
    check_duty_n(duty, n, true);
    const double base = vin / (1.0 - duty);
    DeviceStresses s{};
    s.v_s = {base, -1};
    s.v_d1 = {base, -1};
    s.v_d2 = {(1.0 + n) * base, -1};
    s.v_d3 = {n * base, -1};
    return s;
}

DeviceStresses device_stresses(const ConverterParams& p) { return device_stresses(p.vin(), p.duty(), p.n()); }

double avg_magnetizing_current(double i_o, double duty, double n) {
    check_duty_n(duty, n, false);
    return i_o * (2.0 * duty + n - 1.0) / duty;
}

double avg_magnetizing_current(const ConverterParams& p) {
    return avg_magnetizing_current(output_current(p), p.duty(), p.n());
}

InductorRipples inductor_ripples(const ConverterParams& p) {
    const double vs = p.duty() * p.vin() / p.fs();
    return {vs / p.l1(), vs / p.lm()};
}

PeakCurrents peak_currents(const ConverterParams& p, double i_o) {
    const double d = p.duty();
    const double n = p.n();
    const auto rip = inductor_ripples(p);
    PeakCurrents pk{};
    pk.i_d3_peak = 2.0 * i_o / d;
    pk.i_d2_peak = 2.0 * i_o * n / (d * (n + 1.0));
    pk.i_d1_peak = 2.0 * n * i_o / d + rip.di_lm + rip.di_l1;
    pk.i_s_peak = pk.i_d1_peak;
    return pk;
}

PeakCurrents peak_currents(const ConverterParams& p) { return peak_currents(p, output_current(p)); }

double parallel_inductance(double a, double b) { return a * b / (a + b); }

double clamp_interval_fraction(const ConverterParams& p) {
    const double d = p.duty();
    const double n = p.n();
    const double lp = parallel_inductance(p.lm(), p.l1());
    const double denom = 2.0 * n / d + d * p.rl() * (1.0 - d) / (p.fs() * lp * (n + d));
    return 2.0 / denom;
}

double ccm_min_lm(double vin, double duty, double n, double fs, double i_o) {
    check_duty_n(duty, n, false);
    if (!(i_o > 0.0)) {
        throw std::domain_error("CCM bound undefined at no load (I_o = 0)");
    }
    const double k = 2.0 * duty + n - 1.0;
    if (!(k > 0.0)) {
        throw std::domain_error("CCM bound undefined for 2D + n - 1 <= 0");
    }
    return duty * duty * vin / (2.0 * k * i_o * fs);
}

double ccm_min_lm(const ConverterParams& p) {
    return ccm_min_lm(p.vin(), p.duty(), p.n(), p.fs(), output_current(p));
}

MinCapacitances min_capacitances(double duty, double n, double lm, double rl, double fs, const DesignRipple& r) {
    check_duty_n(duty, n, false);
    const double vf = r.v_ppc() * fs;
    const double load_term = 2.0 * n * (n + 2.0 * duty);
    MinCapacitances c{};
    c.c1_min = (duty * duty / (lm * fs) + load_term / (rl * (1.0 - duty))) / vf;
    c.c4_min = c.c1_min;
    c.c2_min = load_term / (vf * rl * duty * (1.0 + n));
    c.c3_min = 2.0 * (n + 2.0 * duty) / (vf * rl * (1.0 - duty));
    return c;
}

MinCapacitances min_capacitances(const ConverterParams& p, const DesignRipple& r) {
    return min_capacitances(p.duty(), p.n(), p.lm(), p.rl(), p.fs(), r);
}

SteadyStateReport full_report(const ConverterParams& p, std::optional<DesignRipple> r) {
    SteadyStateReport rep;
    const auto v = cap_voltages(p);
    rep.v_c1 = v.v_c1;
    rep.v_c2 = v.v_c2;
    rep.v_c3 = v.v_c3;
    rep.v_c4 = v.v_c4;
    rep.v_o = v.v_o;
    rep.m = rep.v_o / p.vin();

    const auto s = device_stresses(p);
    rep.v_s_stress = s.v_s;
    rep.v_d1_stress = s.v_d1;
    rep.v_d2_stress = s.v_d2;
    rep.v_d3_stress = s.v_d3;

    rep.i_o = output_current(p);
    rep.i_lm_avg = avg_magnetizing_current(p);

    const auto rip = inductor_ripples(p);
    rep.di_l1 = rip.di_l1;
    rep.di_lm = rip.di_lm;

    const auto pk = peak_currents(p);
    rep.i_d1_peak = pk.i_d1_peak;
    rep.i_d2_peak = pk.i_d2_peak;
    rep.i_d3_peak = pk.i_d3_peak;
    rep.i_s_peak = pk.i_s_peak;

    rep.d34 = clamp_interval_fraction(p);

    try {
        rep.lm_min = ccm_min_lm(p);
        rep.ccm = p.lm() >= rep.lm_min;
    } catch (const std::domain_error&) {
        rep.lm_min = std::nan("");
        rep.ccm = false;
    }

    if (r) {
        rep.v_ppc = r->v_ppc();
        const auto c = min_capacitances(p, *r);
        rep.c1_min = c.c1_min;
        rep.c2_min = c.c2_min;
        rep.c3_min = c.c3_min;
        rep.c4_min = c.c4_min;
    }
    return rep;
}

}  // namespace zeta::analytics
