#include "zeta/report_io.hpp"

#include "zeta/analytics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace zeta::io {

using nlohmann::json;

namespace {

void params_comment(std::ostream& os, const ConverterParams& p) {
    os << "# zetaconv " << kVersion << "\n# params";
    const auto j = params_json(p);
    for (auto key : param_keys()) os << ' ' << key << '=' << num(j.at(std::string(key)).get<double>());
    os << '\n';
}

json stress_json(const Stress& s) { return {{"magnitude", s.magnitude}, {"sign", s.sign}}; }

double number_field(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw ValidationError({{key, std::nan(""), "required"}});
    if (!it->is_number()) throw ValidationError({{key, std::nan(""), "must be a number"}});
    return it->get<double>();
}

}  // namespace

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json load_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError("cannot parse " + file.string() + ": " + e.what());
    }
}

void save_text(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot write " + file.string());
    out << text;
    if (!out) throw IoError("write failed: " + file.string());
}

std::map<std::string, double> param_map(const json& j) {
    if (!j.is_object()) throw ValidationError({{"params", std::nan(""), "must be a JSON object"}});
    std::map<std::string, double> raw;
    std::vector<Violation> bad;
    for (const auto& [k, v] : j.items()) {
        if (v.is_number()) {
            raw[k] = v.get<double>();
        } else {
            bad.push_back({k, std::nan(""), "must be a number"});
        }
    }
    if (!bad.empty()) throw ValidationError(std::move(bad));
    return raw;
}

ConverterParams read_params(const std::filesystem::path& file) {
    return validate_params(param_map(load_json(file)));
}

design::DesignSpec design_spec_from(const json& j) {
    if (!j.is_object()) throw ValidationError({{"spec", std::nan(""), "must be a JSON object"}});
    static const char* known[] = {"vin",        "v_o_target", "rl",         "p_o",        "fs",         "v_ppc",
                                  "ripple_fraction", "n_candidates", "d_max", "lm_margin", "cap_margin",
                                  "lk_fraction"};
    std::vector<Violation> unknown;
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* name : known) ok = ok || k == name;
        if (!ok) unknown.push_back({k, std::nan(""), "unknown key"});
    }
    if (!unknown.empty()) throw ValidationError(std::move(unknown));

    design::DesignSpec s;
    s.vin = number_field(j, "vin");
    s.v_o_target = number_field(j, "v_o_target");
    s.fs = number_field(j, "fs");
    s.v_ppc = number_field(j, "v_ppc");
    if (j.contains("rl")) s.rl = number_field(j, "rl");
    if (j.contains("p_o")) s.p_o = number_field(j, "p_o");
    if (j.contains("ripple_fraction")) s.ripple_fraction = number_field(j, "ripple_fraction");
    if (j.contains("d_max")) s.d_max = number_field(j, "d_max");
    if (j.contains("lm_margin")) s.lm_margin = number_field(j, "lm_margin");
    if (j.contains("cap_margin")) s.cap_margin = number_field(j, "cap_margin");
    if (j.contains("lk_fraction")) s.lk_fraction = number_field(j, "lk_fraction");
    if (j.contains("n_candidates")) {
        const auto& a = j.at("n_candidates");
        if (!a.is_array()) throw ValidationError({{"n_candidates", std::nan(""), "must be an array"}});
        s.n_candidates.clear();
        for (const auto& v : a) {
            if (!v.is_number()) throw ValidationError({{"n_candidates", std::nan(""), "must hold numbers"}});
            s.n_candidates.push_back(v.get<double>());
        }
    }
    s.validate();
    return s;
}

json params_json(const ConverterParams& p) {
    const auto& f = p.fields();
    return {{"vin", f.vin}, {"duty", f.duty}, {"n", f.n},   {"l1", f.l1}, {"lm", f.lm}, {"lk", f.lk},
            {"c1", f.c1},   {"c2", f.c2},     {"c3", f.c3}, {"c4", f.c4}, {"rl", f.rl}, {"fs", f.fs}};
}

json report_json(const SteadyStateReport& r) {
    json j = {{"v_c1", r.v_c1},
              {"v_c2", r.v_c2},
              {"v_c3", r.v_c3},
              {"v_c4", r.v_c4},
              {"v_o", r.v_o},
              {"m", r.m},
              {"v_s_stress", stress_json(r.v_s_stress)},
              {"v_d1_stress", stress_json(r.v_d1_stress)},
              {"v_d2_stress", stress_json(r.v_d2_stress)},
              {"v_d3_stress", stress_json(r.v_d3_stress)},
              {"i_o", r.i_o},
              {"i_lm_avg", r.i_lm_avg},
              {"di_l1", r.di_l1},
              {"di_lm", r.di_lm},
              {"i_d1_peak", r.i_d1_peak},
              {"i_d2_peak", r.i_d2_peak},
              {"i_d3_peak", r.i_d3_peak},
              {"i_s_peak", r.i_s_peak},
              {"d34", r.d34},
              {"lm_min", r.lm_min},
              {"ccm", r.ccm},
              {"estimates", {"i_lm_avg", "i_d1_peak", "i_d2_peak", "i_d3_peak", "i_s_peak", "d34"}}};
    if (r.v_ppc) {
        j["v_ppc"] = *r.v_ppc;
        j["c1_min"] = r.c1_min;
        j["c2_min"] = r.c2_min;
        j["c3_min"] = r.c3_min;
        j["c4_min"] = r.c4_min;
    }
    return j;
}

json metrics_json(const SimMetrics& m) {
    json modes = json::object();
    for (std::size_t i = 0; i < m.mode_fraction.size(); ++i) {
        modes["M" + std::to_string(i + 1)] = m.mode_fraction[i];
    }
    return {{"regime", regime_name(m.regime)},
            {"converged", m.converged},
            {"periods", m.periods},
            {"residual", m.residual},
            {"v_c1_avg", m.v_c1_avg},
            {"v_c2_avg", m.v_c2_avg},
            {"v_c3_avg", m.v_c3_avg},
            {"v_c4_avg", m.v_c4_avg},
            {"v_o_avg", m.v_o_avg},
            {"gain", m.gain},
            {"i_l1_avg", m.i_l1_avg},
            {"i_lk_avg", m.i_lk_avg},
            {"i_lm_avg", m.i_lm_avg},
            {"i_o_avg", m.i_o_avg},
            {"di_l1", m.di_l1},
            {"di_lk", m.di_lk},
            {"di_lm", m.di_lm},
            {"dv_c1", m.dv_c1},
            {"dv_c2", m.dv_c2},
            {"dv_c3", m.dv_c3},
            {"dv_c4", m.dv_c4},
            {"i_s_peak", m.i_s_peak},
            {"i_d1_peak", m.i_d1_peak},
            {"i_d2_peak", m.i_d2_peak},
            {"i_d3_peak", m.i_d3_peak},
            {"i_s_avg", m.i_s_avg},
            {"i_d1_avg", m.i_d1_avg},
            {"i_d2_avg", m.i_d2_avg},
            {"i_d3_avg", m.i_d3_avg},
            {"i_c_avg", m.i_c_avg},
            {"i_c_peak", m.i_c_peak},
            {"v_l_avg", m.v_l_avg},
            {"mode_fraction", modes},
            {"off_cycle_fraction", m.off_cycle_fraction},
            {"sequence", m.sequence}};
}

json design_json(const design::DesignResult& r) {
    const auto& s = r.spec;
    json spec = {{"vin", s.vin},
                 {"vin_unit", "V"},
                 {"v_o_target", s.v_o_target},
                 {"v_o_target_unit", "V"},
                 {"fs", s.fs},
                 {"fs_unit", "Hz"},
                 {"v_ppc", s.v_ppc},
                 {"v_ppc_unit", "V"},
                 {"ripple_fraction", s.ripple_fraction},
                 {"n_candidates", s.n_candidates},
                 {"d_max", s.d_max},
                 {"lm_margin", s.lm_margin},
                 {"cap_margin", s.cap_margin},
                 {"lk_fraction", s.lk_fraction}};
    if (s.rl) {
        spec["rl"] = *s.rl;
        spec["rl_unit"] = "ohm";
    }
    if (s.p_o) {
        spec["p_o"] = *s.p_o;
        spec["p_o_unit"] = "W";
    }

    json cands = json::array();
    for (const auto& c : r.candidates) {
        json j = {{"n", c.n}, {"feasible", c.feasible}, {"duty", c.duty}};
        if (!c.feasible) {
            j["reason"] = c.reason;
            cands.push_back(j);
            continue;
        }
        auto put = [&](const char* key, double v, const char* unit) {
            j[key] = v;
            if (unit) j[std::string(key) + "_unit"] = unit;
        };
        put("gain", c.gain, nullptr);
        put("i_o", c.i_o, "A");
        put("i_in_avg", c.i_in_avg, "A");
        put("rl", c.rl, "ohm");
        put("lm_min", c.lm_min, "H");
        put("lm", c.lm, "H");
        put("l1", c.l1, "H");
        put("lk", c.lk, "H");
        put("ccm_margin", c.ccm_margin, nullptr);
        put("c1_min", c.c_min.c1_min, "F");
        put("c2_min", c.c_min.c2_min, "F");
        put("c3_min", c.c_min.c3_min, "F");
        put("c4_min", c.c_min.c4_min, "F");
        put("c1", c.c1, "F");
        put("c2", c.c2, "F");
        put("c3", c.c3, "F");
        put("c4", c.c4, "F");
        put("v_s_stress", c.v_s_stress, "V");
        put("v_d1_stress", c.v_d1_stress, "V");
        put("v_d2_stress", c.v_d2_stress, "V");
        put("v_d3_stress", c.v_d3_stress, "V");
        put("i_s_peak", c.i_s_peak, "A");
        put("i_d1_peak", c.i_d1_peak, "A");
        put("i_d2_peak", c.i_d2_peak, "A");
        put("i_d3_peak", c.i_d3_peak, "A");
        put("di_l1", c.di_l1, "A");
        put("di_lm", c.di_lm, "A");
        cands.push_back(j);
    }
    return {{"version", kVersion},
            {"spec", spec},
            {"policy",
             {{"lm", "lm_margin x lm_min"},
              {"capacitors", "cap_margin x minimum"},
              {"l1", "ripple of L1 = ripple_fraction x average input current (toolkit rule)"},
              {"lk", "lk_fraction x lm (assumed, used only for verification)"}}},
            {"feasible", r.any_feasible()},
            {"candidates", cands}};
}

json verification_json(const std::vector<design::Verification>& vs) {
    json a = json::array();
    for (const auto& v : vs) {
        json j = {{"n", v.n}, {"simulated", v.simulated}};
        if (!v.simulated) {
            j["error"] = v.error;
        } else {
            j["regime"] = regime_name(v.regime);
            j["converged"] = v.converged;
            j["gain_target"] = v.gain_target;
            j["gain_measured"] = v.gain_measured;
            j["gain_error"] = v.gain_error;
            j["dv_c"] = v.dv_c;
            j["dv_c_unit"] = "V";
            j["v_ppc"] = v.v_ppc;
            j["v_ppc_unit"] = "V";
            j["max_ripple_ratio"] = v.max_ripple_ratio;
            j["ccm"] = v.ccm;
            j["five_mode"] = v.five_mode;
        }
        a.push_back(j);
    }
    return a;
}

json topology_table_json(double duty, double n) {
    json rows = json::array();
    for (const auto& t : comparison::topologies()) {
        json j = {{"topology", t.key}, {"label", t.label}, {"gain", comparison::gain_of(t, duty, n)}};
        if (t.counts) {
            j["switches"] = t.counts->switches;
            j["diodes"] = t.counts->diodes;
            j["capacitors"] = t.counts->capacitors;
            j["inductors"] = t.counts->inductors;
            j["coupled_inductor"] = t.counts->coupled_inductor;
        } else {
            j["counts"] = nullptr;
        }
        rows.push_back(j);
    }
    return rows;
}

json stamped(const json& params, json payload) {
    json out = {{"version", kVersion}, {"params", params}};
    for (auto& [k, v] : payload.items()) out[k] = v;
    return out;
}

void write_trace_csv(std::ostream& os, const sim::Trace& trace, const ConverterParams& p) {
    params_comment(os, p);
    os << "t,mode,i_l1,i_lk,i_lm,v_c1,v_c2,v_c3,v_c4,v_o\n";
    for (const auto& pt : trace.points) {
        const auto& x = pt.x;
        os << num(x.t) << ',' << pattern_name(pt.pattern) << ',' << num(x.i_l1) << ',' << num(x.i_lk) << ','
           << num(x.i_lm) << ',' << num(x.v_c1) << ',' << num(x.v_c2) << ',' << num(x.v_c3) << ','
           << num(x.v_c4) << ',' << num(x.v_o()) << '\n';
    }
}

void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows, const ConverterParams& p) {
    params_comment(os, p);
    os << "quantity,analytic,measured,rel_error\n";
    for (const auto& r : rows) {
        os << r.quantity << ',' << num(r.analytic) << ',' << num(r.measured) << ',' << num(r.rel_error) << '\n';
    }
}

void write_gains_csv(std::ostream& os, const std::vector<comparison::GainRow>& rows, double n) {
    os << "# zetaconv " << kVersion << "\n# n=" << num(n) << '\n';
    os << "duty,topology,gain\n";
    for (const auto& r : rows) {
        os << num(r.duty) << ',' << comparison::model(r.topology).key << ',' << num(r.gain) << '\n';
    }
}

void write_topology_csv(std::ostream& os, double duty, double n) {
    os << "# zetaconv " << kVersion << "\n# duty=" << num(duty) << " n=" << num(n) << '\n';
    os << "topology,switches,diodes,capacitors,inductors,coupled_inductor,gain\n";
    for (const auto& t : comparison::topologies()) {
        os << t.key << ',';
        if (t.counts) {
            os << t.counts->switches << ',' << t.counts->diodes << ',' << t.counts->capacitors << ','
               << t.counts->inductors << ',' << (t.counts->coupled_inductor ? "yes" : "no");
        } else {
            os << ",,,,";
        }
        os << ',' << num(comparison::gain_of(t, duty, n)) << '\n';
    }
}

}  // namespace zeta::io
