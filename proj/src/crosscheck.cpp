#include "zeta/crosscheck.hpp"

#include <cmath>

namespace zeta {

double relative_error(double analytic, double measured) {
    const double d = std::fabs(measured - analytic);
    return analytic == 0.0 ? d : d / std::fabs(analytic);
}

std::vector<CompareRow> cross_validate(const SteadyStateReport& r, const SimMetrics& m) {
    std::vector<CompareRow> rows;
    auto add = [&](const char* q, double a, double x, bool est = false) {
        rows.push_back({q, a, x, relative_error(a, x), est});
    };
    add("v_c1", r.v_c1, m.v_c1_avg);
    add("v_c2", r.v_c2, m.v_c2_avg);
    add("v_c3", r.v_c3, m.v_c3_avg);
    add("v_c4", r.v_c4, m.v_c4_avg);
    add("v_o", r.v_o, m.v_o_avg);
    add("m", r.m, m.gain);
    add("di_l1", r.di_l1, m.di_l1);
    add("di_lm", r.di_lm, m.di_lm);
    // diode averages are checked against the measured load current
    add("i_d2_avg", m.i_o_avg, m.i_d2_avg);
    add("i_d3_avg", m.i_o_avg, m.i_d3_avg);

    add("i_lm_avg", r.i_lm_avg, m.i_lm_avg, true);
    add("i_d1_peak", r.i_d1_peak, m.i_d1_peak, true);
    add("i_d2_peak", r.i_d2_peak, m.i_d2_peak, true);
    add("i_d3_peak", r.i_d3_peak, m.i_d3_peak, true);
    add("i_s_peak", r.i_s_peak, m.i_s_peak, true);
    add("d34", r.d34, m.mode_fraction[2] + m.mode_fraction[3], true);
    return rows;
}

}  // namespace zeta
