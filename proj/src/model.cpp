#include "zeta/model.hpp"

#include <cmath>
#include <sstream>

namespace zeta {

namespace {

std::string join_messages(const std::vector<Violation>& v) {
    std::string out;
    for (const auto& x : v) {
        if (!out.empty()) out += "; ";
        out += x.message();
    }
    return out;
}

void require_positive(std::vector<Violation>& out, const char* name, double v) {
    if (!(std::isfinite(v) && v > 0.0)) out.push_back({name, v, "> 0"});
}

}  // namespace

std::string Violation::message() const {
    std::ostringstream os;
    os << field << " = " << value << " out of range (" << bound << ")";
    return os.str();
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error("invalid parameters: " + join_messages(violations)),
      violations_(std::move(violations)) {}

ParamFields reference_fields() {
    ParamFields f;
    f.vin = 30.0;
    f.duty = 0.6;
    f.n = 2.0;
    f.l1 = 47e-6;
    f.lm = 300e-6;
    f.lk = 1e-6;
    f.c1 = 47e-6;
    f.c2 = 3.3e-6;
    f.c3 = 3.3e-6;
    f.c4 = 47e-6;
    f.rl = kDefaultLoadOhms;
    f.fs = 40e3;
    return f;
}

std::vector<Violation> check_fields(const ParamFields& f) {
    std::vector<Violation> out;
    require_positive(out, "vin", f.vin);
    if (!(std::isfinite(f.duty) && f.duty > 0.0 && f.duty < 1.0)) {
        out.push_back({"duty", f.duty, "(0,1)"});
    }
    require_positive(out, "n", f.n);
    require_positive(out, "l1", f.l1);
    require_positive(out, "lm", f.lm);
    if (!(std::isfinite(f.lk) && f.lk >= 0.0)) out.push_back({"lk", f.lk, ">= 0"});
    require_positive(out, "c1", f.c1);
    require_positive(out, "c2", f.c2);
    require_positive(out, "c3", f.c3);
    require_positive(out, "c4", f.c4);
    require_positive(out, "rl", f.rl);
    require_positive(out, "fs", f.fs);
    return out;
}

ConverterParams ConverterParams::from(const ParamFields& f) {
    auto v = check_fields(f);
    if (!v.empty()) throw ValidationError(std::move(v));
    return ConverterParams(f);
}

const std::array<std::string_view, 12>& param_keys() {
    static constexpr std::array<std::string_view, 12> keys{
        "vin", "duty", "n", "l1", "lm", "lk", "c1", "c2", "c3", "c4", "rl", "fs"};
    return keys;
}

ConverterParams validate_params(const std::map<std::string, double>& raw) {
    std::vector<Violation> missing;
    ParamFields f;
    double* slots[] = {&f.vin, &f.duty, &f.n, &f.l1, &f.lm, &f.lk,
                       &f.c1,  &f.c2,   &f.c3, &f.c4, &f.rl, &f.fs};
    const auto& keys = param_keys();
    for (std::size_t i = 0; i < keys.size(); ++i) {
        auto it = raw.find(std::string(keys[i]));
        if (it == raw.end()) {
            missing.push_back({std::string(keys[i]), std::nan(""), "required"});
        } else {
            *slots[i] = it->second;
        }
    }
    for (const auto& [k, v] : raw) {
        bool known = false;
        for (auto key : keys) known = known || key == k;
        if (!known) missing.push_back({k, v, "unknown key"});
    }
    if (!missing.empty()) throw ValidationError(std::move(missing));
    return ConverterParams::from(f);
}

StateVector StateVector::from_array(double t, const StateArray& x) {
    return {t, x[kIL1], x[kILk], x[kILm], x[kVC1], x[kVC2], x[kVC3], x[kVC4]};
}

StateArray StateVector::to_array() const {
    return {i_l1, i_lk, i_lm, v_c1, v_c2, v_c3, v_c4};
}

bool StateVector::finite() const {
    for (double v : to_array()) {
        if (!std::isfinite(v)) return false;
    }
    return std::isfinite(t);
}

Conduction pattern_of(Mode m) {
    switch (m) {
        case Mode::M1: return {true, false, true, false};
        case Mode::M2: return {true, false, false, true};
        case Mode::M3: return {false, true, false, true};
        case Mode::M4: return {false, true, true, false};
        case Mode::M5: return {false, false, true, false};
    }
    return {};
}

std::optional<Mode> mode_of(const Conduction& c) {
    for (Mode m : kAllModes) {
        if (pattern_of(m) == c) return m;
    }
    return std::nullopt;
}

Mode next_mode(Mode m) {
    return m == Mode::M5 ? Mode::M1 : static_cast<Mode>(static_cast<int>(m) + 1);
}

std::string mode_name(Mode m) { return "M" + std::to_string(static_cast<int>(m)); }

std::string pattern_name(const Conduction& c) {
    if (auto m = mode_of(c)) return mode_name(*m);
    std::string s = c.s_on ? "S" : "";
    if (c.d1_on) s += "D1";
    if (c.d2_on) s += "D2";
    if (c.d3_on) s += "D3";
    return s.empty() ? "OFF" : s;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::CCM: return "CCM";
        case Regime::OffCycle: return "CCM-offcycle";
        case Regime::DCM: return "DCM";
    }
    return "?";
}

}  // namespace zeta
