// The state equations are checked against the netlist directly: node
// potentials rebuilt from the inductor voltages, KCL at every node, ideal
// devices (zero voltage when on, zero current when off) and the power
// balance of a lossless network. Nothing here reads the Branches struct.

#include "fixtures.hpp"
#include "zeta/circuit.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace zeta;
using namespace zeta::sim;
using doctest::Approx;

namespace {

std::vector<Conduction> valid_patterns() {
    std::vector<Conduction> out;
    for (int i = 0; i < 16; ++i) {
        Conduction c{(i & 1) != 0, (i & 2) != 0, (i & 4) != 0, (i & 8) != 0};
        if ((c.s_on && c.d1_on) || (c.d2_on && c.d3_on)) continue;
        out.push_back(c);
    }
    return out;
}

// Random state satisfying the algebraic constraints of pattern c.
StateArray consistent_state(const Conduction& c, double n, std::mt19937& rng) {
    std::uniform_real_distribution<double> cur(-8.0, 8.0), volt(0.0, 250.0);
    StateArray x{};
    for (auto i : {kIL1, kILk, kILm}) x[i] = cur(rng);
    for (auto i : {kVC1, kVC2, kVC3, kVC4}) x[i] = volt(rng);
    if (!c.d2_on && !c.d3_on) x[kILk] = x[kILm];
    if (!c.s_on && !c.d1_on) {
        const double i_d2 = c.d2_on ? (x[kILm] - x[kILk]) / n : 0.0;
        x[kIL1] = i_d2 - x[kILk];
    }
    return x;
}

void check_netlist(const ConverterParams& p, const Conduction& c, const StateArray& x, const StateArray& dx) {
    const double n = p.n();
    const double vin = p.vin();
    const double v1 = x[kVC1], v2 = x[kVC2], v3 = x[kVC3], v4 = x[kVC4];
    const double i_l1 = x[kIL1], i_lk = x[kILk], i_lm = x[kILm];

    const double v_l1 = p.l1() * dx[kIL1];
    const double v_lk = p.lk() * dx[kILk];
    const double v_lm = p.lm() * dx[kILm];
    const double i_c1 = p.c1() * dx[kVC1];
    const double i_c2 = p.c2() * dx[kVC2];
    const double i_c3 = p.c3() * dx[kVC3];
    const double i_c4 = p.c4() * dx[kVC4];
    const double i_o = (v2 + v3) / p.rl();
    const double i_sec = (i_lk - i_lm) / n;

    // potentials, ground = 0
    const double e_a = v_l1;
    const double e_b = e_a + v4;
    const double e_bp = e_b - v_lk;
    const double e_e = e_bp - v_lm;
    const double e_y = e_a + v2;
    const double e_o = e_y + v3;
    const double e_p = e_y + n * v_lm;

    // device currents from KCL
    const double i_d2 = i_lk - i_c1;        // node E
    const double i_d3 = i_o + i_c3;         // node O
    const double i_d1 = i_c4 + i_lk;        // node B
    const double i_s = i_l1 + i_c1 - i_d1;  // ground

    const double tv = 1e-9 * 300.0;
    const double ti = 1e-9 * 10.0;
    CHECK(std::fabs(e_e - v1) < tv);  // C1 from E to ground
    CHECK(std::fabs(i_sec + i_d2 - i_d3) < ti);                      // node P
    CHECK(std::fabs(i_c3 - (i_sec + i_c2)) < ti);                    // node Y
    CHECK(std::fabs(i_s + i_o - (i_l1 - i_c4 - i_c2)) < ti);         // node A

    if (c.s_on) CHECK(std::fabs(e_a - vin) < tv); else CHECK(std::fabs(i_s) < ti);
    if (c.d1_on) CHECK(std::fabs(e_b) < tv); else CHECK(std::fabs(i_d1) < ti);
    if (c.d2_on) CHECK(std::fabs(e_e - e_p) < tv); else CHECK(std::fabs(i_d2) < ti);
    if (c.d3_on) CHECK(std::fabs(e_p - e_o) < tv); else CHECK(std::fabs(i_d3) < ti);

    // lossless network: stored energy changes by source power minus load power
    const double de = p.l1() * i_l1 * dx[kIL1] + p.lk() * i_lk * dx[kILk] + p.lm() * i_lm * dx[kILm] +
                      p.c1() * v1 * dx[kVC1] + p.c2() * v2 * dx[kVC2] + p.c3() * v3 * dx[kVC3] +
                      p.c4() * v4 * dx[kVC4];
    const double pw = vin * i_s - (v2 + v3) * i_o;
    CHECK(std::fabs(de - pw) < 1e-9 * 1e4);
}

}  // namespace

TEST_CASE("every conduction pattern satisfies the netlist equations") {
    std::mt19937 rng(1234);
    for (double n : {0.5, 2.0, 4.0}) {
        auto f = reference_fields();
        f.n = n;
        const auto p = ConverterParams::from(f);
        const Circuit circuit(p);
        for (const auto& c : valid_patterns()) {
            for (int k = 0; k < 25; ++k) {
                const auto x = consistent_state(c, n, rng);
                CAPTURE(pattern_name(c));
                check_netlist(p, c, x, circuit.derivative(c, x));
                // evaluate() and the cached affine system agree
                const auto direct = circuit.evaluate(c, x).dx;
                const auto sys = circuit.derivative(c, x);
                for (std::size_t i = 0; i < kStateCount; ++i) {
                    CHECK(sys[i] == Approx(direct[i]).epsilon(1e-9).scale(1e3));
                }
            }
        }
    }
}

TEST_CASE("algebraic constraints are preserved by the dynamics") {
    std::mt19937 rng(99);
    const auto p = fx::reference();
    const Circuit circuit(p);
    for (const auto& c : valid_patterns()) {
        const auto x = consistent_state(c, p.n(), rng);
        const auto dx = circuit.derivative(c, x);
        if (!c.d2_on && !c.d3_on) CHECK(dx[kILk] == Approx(dx[kILm]).scale(1e4));
        if (!c.s_on && !c.d1_on) {
            const double di_d2 = c.d2_on ? (dx[kILm] - dx[kILk]) / p.n() : 0.0;
            CHECK(dx[kIL1] + dx[kILk] - di_d2 == Approx(0.0).scale(1e4));
        }
    }
}

TEST_CASE("branch constraints of the named modes") {
    const auto p = fx::reference();
    StateArray x{};
    x[kIL1] = 4.0;
    x[kILk] = 1.0;
    x[kILm] = 0.5;
    x[kVC1] = 45.0;
    x[kVC2] = 180.0;
    x[kVC3] = 60.0;
    x[kVC4] = 45.0;

    for (Mode m : {Mode::M1, Mode::M2}) {
        const auto dx = mode_system(m, p).apply(x);
        CHECK(dx[kIL1] == Approx(30.0 / 47e-6));
        CHECK(p.lk() * dx[kILk] + p.lm() * dx[kILm] == Approx(30.0 + 45.0 - 45.0));
    }
    CHECK(mode_system(Mode::M2, p).apply(x)[kIL1] == Approx(6.383e5).epsilon(1e-3));
    // D3 clamps the transformer: n v_Lm = v_c3
    CHECK(p.n() * p.lm() * mode_system(Mode::M2, p).apply(x)[kILm] == Approx(60.0));

    for (Mode m : {Mode::M3, Mode::M4}) {
        CHECK(p.l1() * mode_system(m, p).apply(x)[kIL1] == Approx(-45.0));
    }
    // at this operating point n v_c1 + v_c4 + v_c1 - v_c2 = 0, so the
    // magnetizing branch sees -v_c1 in M4
    CHECK(p.lm() * mode_system(Mode::M4, p).apply(x)[kILm] == Approx(-45.0));
}

TEST_CASE("rows scale with the element they belong to") {
    const auto p = fx::reference();
    const auto q = fx::with([](ParamFields& f) {
        f.l1 *= 2;
        f.c1 *= 2;
        f.c2 *= 2;
        f.c3 *= 2;
        f.c4 *= 2;
    });
    for (Mode m : kAllModes) {
        const auto a = mode_system(m, p);
        const auto b = mode_system(m, q);
        // a floating switch node couples the l1 row to lk, so only pinned patterns scale
        const auto c = pattern_of(m);
        std::vector<std::size_t> rows{kVC1, kVC2, kVC3, kVC4};
        if (c.s_on || c.d1_on) rows.push_back(kIL1);
        for (auto row : rows) {
            for (std::size_t j = 0; j < kStateCount; ++j) {
                CHECK(b.a[row][j] == Approx(a.a[row][j] / 2).scale(1.0));
            }
            CHECK(b.b[row] == Approx(a.b[row] / 2).scale(1.0));
        }
    }
}

TEST_CASE("transition table follows the five-mode cycle") {
    CHECK(transition_events(Mode::M1).front().guard == Guard::D2Current);
    CHECK(transition_events(Mode::M2).front().guard == Guard::GateOff);
    CHECK(transition_events(Mode::M3).front().guard == Guard::D3Current);
    CHECK(transition_events(Mode::M4).front().guard == Guard::D1Current);
    CHECK(transition_events(Mode::M5).front().guard == Guard::GateOn);
    for (Mode m : kAllModes) CHECK(transition_events(m).front().next == next_mode(m));
    // with S on the clamp diode is not watched
    for (auto g : active_guards(pattern_of(Mode::M1))) {
        CHECK(g != Guard::D1Current);
        CHECK(g != Guard::D1Voltage);
    }
}

TEST_CASE("simulation needs finite leakage") {
    const auto p = fx::with([](ParamFields& f) { f.lk = 0.0; });
    CHECK_THROWS_AS(Circuit{p}, std::invalid_argument);
}
