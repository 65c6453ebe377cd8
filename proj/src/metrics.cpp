#include "zeta/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zeta::sim {

namespace {

// Sub-intervals shorter than this fraction of the period have no measurable
// duration.
constexpr double kZeroMeasure = 1e-7;

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    [[nodiscard]] double span() const { return hi >= lo ? hi - lo : 0.0; }
};

}  // namespace

std::vector<Segment> conduction_sequence(const Trace& trace) {
    std::vector<Segment> seq;
    const auto& pts = trace.points;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double dt = pts[k + 1].x.t - pts[k].x.t;
        if (dt <= 0.0) continue;
        const double f = dt / trace.period;
        if (!seq.empty() && seq.back().pattern == pts[k].pattern) {
            seq.back().fraction += f;
        } else {
            seq.push_back({pts[k].pattern, f});
        }
    }
    return seq;
}

bool is_ccm_sequence(const std::vector<Segment>& seq) {
    int last = 0;
    for (const auto& s : seq) {
        if (s.fraction <= kZeroMeasure) continue;
        const auto m = mode_of(s.pattern);
        if (!m) return false;
        const int id = static_cast<int>(*m);
        if (id <= last) return false;
        last = id;
    }
    return last != 0;
}

Regime classify_sequence(const std::vector<Segment>& seq) {
    for (const auto& s : seq) {
        if (s.fraction > kZeroMeasure && !s.pattern.s_on && !s.pattern.d2_on && !s.pattern.d3_on) {
            return Regime::DCM;
        }
    }
    return is_ccm_sequence(seq) ? Regime::CCM : Regime::OffCycle;
}

SimMetrics extract_metrics(const Trace& trace, const ConverterParams& p) {
    const Circuit circuit(p);
    SimMetrics m;
    const auto& pts = trace.points;
    if (pts.size() < 2) return m;

    const double span = pts.back().x.t - pts.front().x.t;

    std::array<double, kStateCount> x_int{};
    double v_o_int = 0.0;
    double i_s_int = 0.0, i_d1_int = 0.0, i_d2_int = 0.0, i_d3_int = 0.0;
    std::array<double, 4> i_c_int{};
    std::array<double, 3> v_l_int{};
    std::array<Extent, kStateCount> ext{};

    for (const auto& pt : pts) {
        const auto x = pt.x.to_array();
        for (std::size_t i = 0; i < kStateCount; ++i) ext[i].add(x[i]);
    }

    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double dt = pts[k + 1].x.t - pts[k].x.t;
        if (dt <= 0.0) continue;
        const auto& c = pts[k].pattern;
        const auto xa = pts[k].x.to_array();
        const auto xb = pts[k + 1].x.to_array();
        const auto ba = circuit.evaluate(c, xa);
        const auto bb = circuit.evaluate(c, xb);
        const double w = 0.5 * dt;

        for (std::size_t i = 0; i < kStateCount; ++i) x_int[i] += w * (xa[i] + xb[i]);
        v_o_int += w * (xa[kVC2] + xa[kVC3] + xb[kVC2] + xb[kVC3]);
        i_s_int += w * (ba.i_s + bb.i_s);
        i_d1_int += w * (ba.i_d1 + bb.i_d1);
        i_d2_int += w * (ba.i_d2 + bb.i_d2);
        i_d3_int += w * (ba.i_d3 + bb.i_d3);
        i_c_int[0] += w * (ba.i_c1 + bb.i_c1);
        i_c_int[1] += w * (ba.i_c2 + bb.i_c2);
        i_c_int[2] += w * (ba.i_c3 + bb.i_c3);
        i_c_int[3] += w * (ba.i_c4 + bb.i_c4);
        v_l_int[0] += w * (ba.v_l1 + bb.v_l1);
        v_l_int[1] += w * (ba.v_lk + bb.v_lk);
        v_l_int[2] += w * (ba.v_lm + bb.v_lm);

        for (const auto* b : {&ba, &bb}) {
            m.i_s_peak = std::max(m.i_s_peak, b->i_s);
            m.i_d1_peak = std::max(m.i_d1_peak, b->i_d1);
            m.i_d2_peak = std::max(m.i_d2_peak, b->i_d2);
            m.i_d3_peak = std::max(m.i_d3_peak, b->i_d3);
            m.i_c_peak[0] = std::max(m.i_c_peak[0], std::fabs(b->i_c1));
            m.i_c_peak[1] = std::max(m.i_c_peak[1], std::fabs(b->i_c2));
            m.i_c_peak[2] = std::max(m.i_c_peak[2], std::fabs(b->i_c3));
            m.i_c_peak[3] = std::max(m.i_c_peak[3], std::fabs(b->i_c4));
        }
    }

    m.i_l1_avg = x_int[kIL1] / span;
    m.i_lk_avg = x_int[kILk] / span;
    m.i_lm_avg = x_int[kILm] / span;
    m.v_c1_avg = x_int[kVC1] / span;
    m.v_c2_avg = x_int[kVC2] / span;
    m.v_c3_avg = x_int[kVC3] / span;
    m.v_c4_avg = x_int[kVC4] / span;
    m.v_o_avg = v_o_int / span;
    m.i_o_avg = m.v_o_avg / p.rl();
    m.gain = m.v_o_avg / p.vin();

    m.i_s_avg = i_s_int / span;
    m.i_d1_avg = i_d1_int / span;
    m.i_d2_avg = i_d2_int / span;
    m.i_d3_avg = i_d3_int / span;
    for (std::size_t i = 0; i < 4; ++i) m.i_c_avg[i] = i_c_int[i] / span;
    for (std::size_t i = 0; i < 3; ++i) m.v_l_avg[i] = v_l_int[i] / span;

    m.di_l1 = ext[kIL1].span();
    m.di_lk = ext[kILk].span();
    m.di_lm = ext[kILm].span();
    m.dv_c1 = ext[kVC1].span();
    m.dv_c2 = ext[kVC2].span();
    m.dv_c3 = ext[kVC3].span();
    m.dv_c4 = ext[kVC4].span();

    const auto seq = conduction_sequence(trace);
    for (const auto& s : seq) {
        if (auto mode = mode_of(s.pattern)) {
            m.mode_fraction[static_cast<std::size_t>(*mode) - 1] += s.fraction;
        } else {
            m.off_cycle_fraction += s.fraction;
        }
        if (s.fraction > kZeroMeasure) m.sequence.push_back(pattern_name(s.pattern));
    }
    m.regime = classify_sequence(seq);
    return m;
}

}  // namespace zeta::sim
