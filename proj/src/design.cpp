#include "zeta/design.hpp"

#include "zeta/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zeta::design {

InfeasibleDuty::InfeasibleDuty(double duty, std::string bound)
    : std::domain_error("infeasible duty " + std::to_string(duty) + " (" + bound + ")"),
      duty_(duty),
      bound_(std::move(bound)) {}

double solve_duty(double m, double n, double d_max) {
    if (!(n > 0.0) || !std::isfinite(m)) throw std::domain_error("n must be > 0");
    const double d = (m - n) / (m + 2.0);
    if (!(d > 0.0)) throw InfeasibleDuty(d, "D > 0 requires M > n");
    if (d > d_max) {
        std::ostringstream os;
        os << "D <= d_max = " << d_max;
        throw InfeasibleDuty(d, os.str());
    }
    return d;
}

void DesignSpec::validate() const {
    std::vector<Violation> v;
    auto positive = [&](const char* name, double x) {
        if (!(std::isfinite(x) && x > 0.0)) v.push_back({name, x, "> 0"});
    };
    positive("vin", vin);
    positive("v_o_target", v_o_target);
    positive("fs", fs);
    positive("v_ppc", v_ppc);
    positive("ripple_fraction", ripple_fraction);
    positive("lm_margin", lm_margin);
    positive("cap_margin", cap_margin);
    positive("lk_fraction", lk_fraction);
    if (!(d_max > 0.0 && d_max < 1.0)) v.push_back({"d_max", d_max, "(0,1)"});
    if (std::isfinite(vin) && std::isfinite(v_o_target) && !(v_o_target > vin)) {
        v.push_back({"v_o_target", v_o_target, "> vin (step-up)"});
    }
    if (rl.has_value() == p_o.has_value()) {
        v.push_back({"load", std::nan(""), "exactly one of rl, p_o"});
    } else if (rl) {
        positive("rl", *rl);
    } else {
        positive("p_o", *p_o);
    }
    if (n_candidates.empty()) v.push_back({"n_candidates", 0.0, "non-empty"});
    for (double n : n_candidates) positive("n_candidates", n);
    if (!v.empty()) throw ValidationError(std::move(v));
}

double DesignSpec::load_resistance() const {
    return rl ? *rl : v_o_target * v_o_target / *p_o;
}

bool DesignResult::any_feasible() const {
    return std::any_of(candidates.begin(), candidates.end(), [](const Candidate& c) { return c.feasible; });
}

namespace {

Candidate size_one(const DesignSpec& s, double n) {
    Candidate c;
    c.n = n;
    c.rl = s.load_resistance();
    const double m = s.v_o_target / s.vin;
    try {
        c.duty = solve_duty(m, n, s.d_max);
    } catch (const InfeasibleDuty& e) {
        c.duty = e.duty();
        c.reason = e.bound();
        return c;
    }
    c.feasible = true;
    c.gain = analytics::gain(c.duty, n);
    c.i_o = s.v_o_target / c.rl;
    c.i_in_avg = c.gain * c.i_o;

    c.lm_min = analytics::ccm_min_lm(s.vin, c.duty, n, s.fs, c.i_o);
    c.lm = s.lm_margin * c.lm_min;
    c.l1 = c.duty * s.vin / (s.fs * s.ripple_fraction * c.i_in_avg);
    c.lk = s.lk_fraction * c.lm;
    c.ccm_margin = c.lm / c.lm_min;

    c.c_min = analytics::min_capacitances(c.duty, n, c.lm, c.rl, s.fs, analytics::DesignRipple(s.v_ppc));
    c.c1 = s.cap_margin * c.c_min.c1_min;
    c.c2 = s.cap_margin * c.c_min.c2_min;
    c.c3 = s.cap_margin * c.c_min.c3_min;
    c.c4 = s.cap_margin * c.c_min.c4_min;

    const auto st = analytics::device_stresses(s.vin, c.duty, n);
    c.v_s_stress = st.v_s.magnitude;
    c.v_d1_stress = st.v_d1.magnitude;
    c.v_d2_stress = st.v_d2.magnitude;
    c.v_d3_stress = st.v_d3.magnitude;

    c.di_l1 = c.duty * s.vin / (c.l1 * s.fs);
    c.di_lm = c.duty * s.vin / (c.lm * s.fs);
    // peak estimates, same closed forms as analytics::peak_currents
    c.i_d3_peak = 2.0 * c.i_o / c.duty;
    c.i_d2_peak = 2.0 * c.i_o * n / (c.duty * (n + 1.0));
    c.i_d1_peak = 2.0 * n * c.i_o / c.duty + c.di_lm + c.di_l1;
    c.i_s_peak = c.i_d1_peak;
    return c;
}

}  // namespace

ConverterParams candidate_params(const DesignSpec& s, const Candidate& c, const VerifyOptions& opt) {
    ParamFields f;
    f.vin = s.vin;
    f.duty = c.duty;
    f.n = c.n;
    f.l1 = c.l1;
    f.lm = opt.lm_scale ? *opt.lm_scale * c.lm_min : c.lm;
    f.lk = c.lk;
    const double k = opt.cap_scale.value_or(s.cap_margin);
    f.c1 = k * c.c_min.c1_min;
    f.c2 = k * c.c_min.c2_min;
    f.c3 = k * c.c_min.c3_min;
    f.c4 = k * c.c_min.c4_min;
    f.rl = c.rl;
    f.fs = s.fs;
    return ConverterParams::from(f);
}

DesignResult size_converter(const DesignSpec& spec) {
    spec.validate();
    DesignResult r;
    r.spec = spec;
    for (double n : spec.n_candidates) r.candidates.push_back(size_one(spec, n));
    return r;
}

std::vector<Verification> verify_design(const DesignResult& r, const sim::SimConfig& cfg,
                                        const VerifyOptions& opt) {
    std::vector<ConverterParams> ps;
    std::vector<const Candidate*> which;
    for (const auto& c : r.candidates) {
        if (!c.feasible) continue;
        ps.push_back(candidate_params(r.spec, c, opt));
        which.push_back(&c);
    }
    const auto runs = sweep::simulate_batch(ps, cfg);

    std::vector<Verification> out;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        Verification v;
        v.n = which[i]->n;
        v.gain_target = r.spec.v_o_target / r.spec.vin;
        v.v_ppc = r.spec.v_ppc;
        if (!runs[i].ok) {
            v.error = runs[i].error;
            out.push_back(v);
            continue;
        }
        const auto& m = runs[i].metrics;
        v.simulated = true;
        v.regime = m.regime;
        v.converged = m.converged;
        v.gain_measured = m.gain;
        v.gain_error = std::fabs(m.gain - v.gain_target) / v.gain_target;
        v.dv_c = {m.dv_c1, m.dv_c2, m.dv_c3, m.dv_c4};
        v.max_ripple_ratio = *std::max_element(v.dv_c.begin(), v.dv_c.end()) / v.v_ppc;
        v.ccm = m.regime != Regime::DCM;
        v.five_mode = m.regime == Regime::CCM;
        out.push_back(v);
    }
    return out;
}

}  // namespace zeta::design
