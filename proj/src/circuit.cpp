#include "zeta/circuit.hpp"

#include <stdexcept>

namespace zeta::sim {

namespace {

std::size_t pattern_index(const Conduction& c) {
    return (c.s_on ? 1u : 0u) | (c.d1_on ? 2u : 0u) | (c.d2_on ? 4u : 0u) | (c.d3_on ? 8u : 0u);
}

bool pattern_valid(const Conduction& c) { return !(c.s_on && c.d1_on) && !(c.d2_on && c.d3_on); }

Conduction pattern_from_index(std::size_t i) {
    return {(i & 1u) != 0, (i & 2u) != 0, (i & 4u) != 0, (i & 8u) != 0};
}

AffineSystem probe(const Circuit& circuit, const Conduction& c) {
    AffineSystem sys;
    StateArray x{};
    sys.b = circuit.evaluate(c, x).dx;
    for (std::size_t j = 0; j < kStateCount; ++j) {
        x.fill(0.0);
        x[j] = 1.0;
        const auto col = circuit.evaluate(c, x).dx;
        for (std::size_t i = 0; i < kStateCount; ++i) sys.a[i][j] = col[i] - sys.b[i];
    }
    return sys;
}

}  // namespace

StateArray AffineSystem::apply(const StateArray& x) const {
    StateArray out = b;
    for (std::size_t i = 0; i < kStateCount; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < kStateCount; ++j) acc += a[i][j] * x[j];
        out[i] += acc;
    }
    return out;
}

Circuit::Circuit(const ConverterParams& p) : p_(p) {
    if (!(p.lk() > 0.0)) {
        throw std::invalid_argument("simulation requires lk > 0 (finite leakage inductance)");
    }
    for (std::size_t i = 0; i < systems_.size(); ++i) {
        const auto c = pattern_from_index(i);
        if (pattern_valid(c)) systems_[i] = probe(*this, c);
    }
}

const AffineSystem& Circuit::system(const Conduction& c) const {
    if (!pattern_valid(c)) throw std::logic_error("invalid conduction pattern " + pattern_name(c));
    return systems_[pattern_index(c)];
}

Branches Circuit::evaluate(const Conduction& c, const StateArray& x) const {
    if (!pattern_valid(c)) throw std::logic_error("invalid conduction pattern " + pattern_name(c));

    const double vin = p_.vin();
    const double n = p_.n();
    const double l1 = p_.l1();
    const double lk = p_.lk();
    const double lm = p_.lm();

    const double i_l1 = x[kIL1];
    const double i_lk = x[kILk];
    const double i_lm = x[kILm];
    const double v1 = x[kVC1];
    const double v2 = x[kVC2];
    const double v3 = x[kVC3];
    const double v4 = x[kVC4];

    const double k = 1.0 / lk;
    const double q = v4 - v1;  // v_B - v_E with the switch node at zero

    // Two linear conditions in (v_a, v_lm):  r0 . [v_a, v_lm] = r0rhs, same for r1.
    double a00 = 0.0, a01 = 0.0, r0 = 0.0;
    double a10 = 0.0, a11 = 0.0, r1 = 0.0;

    if (c.s_on) {
        a00 = 1.0;
        r0 = vin;
    } else if (c.d1_on) {
        a00 = 1.0;
        r0 = -v4;
    } else {
        // d/dt (i_l1 + i_lk - i_d2) = 0 keeps the open clamp path current-free.
        const double g = 1.0 + (c.d2_on ? 1.0 / n : 0.0);
        a00 = 1.0 / l1 + g * k;
        a01 = -g * k - (c.d2_on ? 1.0 / (n * lm) : 0.0);
        r0 = -g * k * q;
    }

    if (c.d2_on) {
        // secondary closes through C1 and C2: v_a + n v_lm = v1 - v2
        a10 = 1.0;
        a11 = n;
        r1 = v1 - v2;
    } else if (c.d3_on) {
        a11 = n;
        r1 = v3;
    } else {
        // open secondary: i_lk and i_lm stay equal
        a10 = k;
        a11 = -k - 1.0 / lm;
        r1 = -k * q;
    }

    const double det = a00 * a11 - a01 * a10;
    const double v_a = (r0 * a11 - a01 * r1) / det;
    const double v_lm = (a00 * r1 - r0 * a10) / det;

    Branches b;
    b.v_a = v_a;
    b.v_lm = v_lm;
    b.v_l1 = v_a;
    b.v_lk = v_a + q - v_lm;
    b.v_sw = vin - v_a;

    b.i_sec = (i_lk - i_lm) / n;
    b.i_d2 = c.d2_on ? -b.i_sec : 0.0;
    b.i_d3 = c.d3_on ? b.i_sec : 0.0;
    const double i_path = i_l1 + i_lk - b.i_d2;
    b.i_s = c.s_on ? i_path : 0.0;
    b.i_d1 = c.d1_on ? i_path : 0.0;
    b.i_o = (v2 + v3) / p_.rl();

    b.i_c1 = i_lk - b.i_d2;
    b.i_c2 = b.i_d2 - b.i_o;
    b.i_c3 = b.i_d3 - b.i_o;
    b.i_c4 = b.i_d1 - i_lk;

    const double v_p = v_a + v2 + n * v_lm;
    b.vf_d1 = -(v_a + v4);
    b.vf_d2 = v1 - v_p;
    b.vf_d3 = n * v_lm - v3;

    b.dx[kIL1] = b.v_l1 / l1;
    b.dx[kILk] = b.v_lk / lk;
    b.dx[kILm] = v_lm / lm;
    b.dx[kVC1] = b.i_c1 / p_.c1();
    b.dx[kVC2] = b.i_c2 / p_.c2();
    b.dx[kVC3] = b.i_c3 / p_.c3();
    b.dx[kVC4] = b.i_c4 / p_.c4();
    return b;
}

AffineSystem mode_system(Mode m, const ConverterParams& p) {
    Circuit circuit(p);
    return circuit.system(pattern_of(m));
}

StateArray rk4_step(const AffineSystem& sys, const StateArray& x, double h) {
    auto axpy = [](const StateArray& base, const StateArray& d, double s) {
        StateArray r;
        for (std::size_t i = 0; i < kStateCount; ++i) r[i] = base[i] + s * d[i];
        return r;
    };
    const auto k1 = sys.apply(x);
    const auto k2 = sys.apply(axpy(x, k1, 0.5 * h));
    const auto k3 = sys.apply(axpy(x, k2, 0.5 * h));
    const auto k4 = sys.apply(axpy(x, k3, h));
    StateArray out;
    for (std::size_t i = 0; i < kStateCount; ++i) {
        out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

std::vector<Transition> transition_events(Mode m) {
    switch (m) {
        case Mode::M1: return {{Guard::D2Current, Mode::M2}};
        case Mode::M2: return {{Guard::GateOff, Mode::M3}};
        case Mode::M3: return {{Guard::D3Current, Mode::M4}};
        case Mode::M4: return {{Guard::D1Current, Mode::M5}};
        case Mode::M5: return {{Guard::GateOn, Mode::M1}};
    }
    return {};
}

std::vector<Guard> active_guards(const Conduction& c) {
    std::vector<Guard> g;
    if (!c.s_on) g.push_back(c.d1_on ? Guard::D1Current : Guard::D1Voltage);
    g.push_back(c.d2_on ? Guard::D2Current : Guard::D2Voltage);
    g.push_back(c.d3_on ? Guard::D3Current : Guard::D3Voltage);
    return g;
}

double guard_value(Guard g, const Branches& b) {
    switch (g) {
        case Guard::D1Current: return b.i_d1;
        case Guard::D2Current: return b.i_d2;
        case Guard::D3Current: return b.i_d3;
        case Guard::D1Voltage: return -b.vf_d1;
        case Guard::D2Voltage: return -b.vf_d2;
        case Guard::D3Voltage: return -b.vf_d3;
        case Guard::GateOff:
        case Guard::GateOn: break;
    }
    throw std::logic_error("gate guards are clock driven");
}

std::string guard_name(Guard g) {
    switch (g) {
        case Guard::GateOff: return "gate-off";
        case Guard::GateOn: return "gate-on";
        case Guard::D1Current: return "i_d1=0";
        case Guard::D2Current: return "i_d2=0";
        case Guard::D3Current: return "i_d3=0";
        case Guard::D1Voltage: return "v_d1=0";
        case Guard::D2Voltage: return "v_d2=0";
        case Guard::D3Voltage: return "v_d3=0";
    }
    return "?";
}

}  // namespace zeta::sim
