#include "fixtures.hpp"
#include "zeta/analytics.hpp"
#include "zeta/design.hpp"

#include <doctest.h>

#include <random>

using namespace zeta;
namespace an = zeta::analytics;
using doctest::Approx;

TEST_CASE("gain at the reference point and hand values") {
    CHECK(an::gain(0.6, 2.0) == 8.0);
    CHECK(an::gain(0.5, 1.0) == 4.0);
    CHECK(an::gain(1e-12, 3.0) == Approx(3.0).epsilon(1e-10));
    CHECK_THROWS_AS((void)an::gain(1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS((void)an::gain(0.0, 2.0), std::domain_error);
    CHECK_THROWS_AS((void)an::gain(0.5, 0.0), std::domain_error);
}

TEST_CASE("capacitor voltages at the reference point") {
    const auto v = an::cap_voltages(fx::reference());
    CHECK(v.v_c1 == Approx(45.0).epsilon(1e-14));
    CHECK(v.v_c4 == Approx(45.0).epsilon(1e-14));
    CHECK(v.v_c2 == Approx(180.0).epsilon(1e-14));
    CHECK(v.v_c3 == Approx(60.0).epsilon(1e-14));
    CHECK(v.v_o == Approx(240.0).epsilon(1e-14));
}

TEST_CASE("capacitor voltages near zero duty") {
    const auto p = fx::with([](ParamFields& f) { f.duty = 1e-12; });
    const auto v = an::cap_voltages(p);
    CHECK(v.v_c1 == Approx(0.0));
    CHECK(v.v_c2 == Approx(0.0));
    CHECK(v.v_c4 == Approx(0.0));
    CHECK(v.v_c3 == Approx(60.0));
}

TEST_CASE("gain identity over a dense grid") {
    for (int i = 1; i < 100; ++i) {
        for (double n : {0.25, 0.5, 1.0, 2.0, 3.0, 7.5}) {
            auto f = reference_fields();
            f.duty = i / 100.0;
            f.n = n;
            const auto p = ConverterParams::from(f);
            const auto v = an::cap_voltages(p);
            const double m = an::gain(f.duty, n);
            CHECK(std::fabs(v.v_c2 + v.v_c3 - m * f.vin) <= 1e-12 * m * f.vin);
            CHECK(v.v_o == v.v_c2 + v.v_c3);
        }
    }
}

TEST_CASE("gain is strictly monotone in duty and n") {
    for (double n : {0.5, 1.0, 2.0, 3.0}) {
        double last = 0.0;
        for (int i = 1; i < 1000; ++i) {
            const double g = an::gain(i / 1000.0, n);
            CHECK(g > last);
            last = g;
        }
    }
    for (int i = 1; i < 20; ++i) {
        const double d = i / 20.0;
        CHECK(an::gain(d, 2.0) < an::gain(d, 2.0 + 1e-6));
    }
}

TEST_CASE("device stresses") {
    const auto s = an::device_stresses(fx::reference());
    CHECK(s.v_s.magnitude == Approx(75.0));
    CHECK(s.v_d1.magnitude == Approx(75.0));
    CHECK(s.v_d2.magnitude == Approx(225.0));
    CHECK(s.v_d3.magnitude == Approx(150.0));
    CHECK(s.v_d2.sign == -1);
    CHECK(an::device_stresses(30.0, 0.6, 0.0).v_d3.magnitude == 0.0);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> vin(1.0, 400.0), d(0.01, 0.99), n(0.05, 10.0);
    for (int i = 0; i < 100; ++i) {
        const auto t = an::device_stresses(vin(rng), d(rng), n(rng));
        const double sum = t.v_d1.magnitude + t.v_d3.magnitude;
        CHECK(std::fabs(t.v_d2.magnitude - sum) <= 1e-12 * sum);
    }
}

TEST_CASE("average magnetizing current estimate") {
    CHECK(an::avg_magnetizing_current(fx::reference()) == Approx(2.2 / 0.6));
    CHECK(an::avg_magnetizing_current(1.0, 0.5, 1.0) == Approx(2.0));
    CHECK(an::avg_magnetizing_current(0.0, 0.6, 2.0) == 0.0);
    CHECK(an::output_current(fx::reference()) == Approx(1.0));
}

TEST_CASE("inductor ripples") {
    const auto r = an::inductor_ripples(fx::reference());
    CHECK(r.di_l1 == Approx(9.574468085106383));
    CHECK(r.di_lm == Approx(1.5));
    const auto r2 = an::inductor_ripples(fx::with([](ParamFields& f) { f.fs = 80e3; }));
    CHECK(r2.di_l1 == Approx(r.di_l1 / 2));
    CHECK(r2.di_lm == Approx(r.di_lm / 2));
    const auto r0 = an::inductor_ripples(fx::with([](ParamFields& f) { f.duty = 1e-9; }));
    CHECK(r0.di_l1 < 1e-6);
}

TEST_CASE("peak current estimates") {
    const auto pk = an::peak_currents(fx::reference());
    CHECK(pk.i_d3_peak == Approx(10.0 / 3.0));
    CHECK(pk.i_d2_peak == Approx(20.0 / 9.0));
    CHECK(pk.i_d1_peak == Approx(6.666666666666667 + 1.5 + 9.574468085106383));
    CHECK(pk.i_s_peak == pk.i_d1_peak);
    const auto p0 = an::peak_currents(fx::reference(), 0.0);
    CHECK(p0.i_d1_peak == Approx(1.5 + 9.574468085106383));
    const auto p1 = an::peak_currents(fx::with([](ParamFields& f) { f.n = 1.0; }), 1.0);
    CHECK(p1.i_d2_peak == Approx(1.0 / 0.6));
}

TEST_CASE("clamp interval estimate") {
    const auto p = fx::reference();
    CHECK(an::parallel_inductance(47e-6, 300e-6) == Approx(40.634e-6).epsilon(1e-4));
    // independent evaluation of the same closed form
    const double lp = 47e-6 * 300e-6 / 347e-6;
    const double oracle = 2.0 / (2 * 2 / 0.6 + 0.6 * 240 * 0.4 / (40e3 * lp * 2.6));
    CHECK(an::clamp_interval_fraction(p) == Approx(oracle).epsilon(1e-12));
    CHECK(an::clamp_interval_fraction(p) == Approx(0.0985).epsilon(2e-3));
    const auto q = fx::with([](ParamFields& f) {
        f.rl *= 3;
        f.fs *= 3;
    });
    CHECK(an::clamp_interval_fraction(q) == Approx(an::clamp_interval_fraction(p)).epsilon(1e-12));
    const auto big_n = fx::with([](ParamFields& f) { f.n = 1e6; });
    CHECK(an::clamp_interval_fraction(big_n) < 1e-5);
}

TEST_CASE("CCM bound") {
    const auto p = fx::reference();
    CHECK(an::ccm_min_lm(p) == Approx(0.36 * 30 / (2 * 2.2 * 1 * 40e3)));
    CHECK(an::ccm_min_lm(p) == Approx(61.36e-6).epsilon(1e-4));
    CHECK(an::full_report(p).ccm);
    CHECK(an::ccm_min_lm(30, 0.6, 2, 80e3, 1.0) == Approx(an::ccm_min_lm(p) / 2));
    CHECK(an::ccm_min_lm(30, 0.6, 2, 40e3, 0.5) == Approx(an::ccm_min_lm(p) * 2));
    CHECK_THROWS_AS((void)an::ccm_min_lm(30, 0.6, 2, 40e3, 0.0), std::domain_error);
    const auto small = fx::with([](ParamFields& f) { f.lm = 50e-6; });
    CHECK_FALSE(an::full_report(small).ccm);
}

TEST_CASE("minimum capacitances") {
    const auto p = fx::reference();
    const auto c = an::min_capacitances(p, an::DesignRipple(1.0));
    CHECK(c.c1_min == Approx(4.0833e-6).epsilon(1e-4));
    CHECK(c.c4_min == c.c1_min);
    CHECK(c.c2_min == Approx(0.74074e-6).epsilon(1e-4));
    CHECK(c.c3_min == Approx(1.66667e-6).epsilon(1e-4));
    const auto c2 = an::min_capacitances(p, an::DesignRipple(2.0));
    CHECK(c2.c1_min == Approx(c.c1_min / 2));
    CHECK(c2.c2_min == Approx(c.c2_min / 2));
    CHECK(c2.c3_min == Approx(c.c3_min / 2));
    CHECK_THROWS_AS(an::DesignRipple(0.0), ValidationError);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(0.05, 0.95), n(0.2, 6.0);
    for (int i = 0; i < 100; ++i) {
        const double dd = d(rng), nn = n(rng);
        const auto m = an::min_capacitances(dd, nn, 1e-4, 100.0, 50e3, an::DesignRipple(0.5));
        CHECK(m.c3_min / m.c2_min == Approx(dd * (1 + nn) / (nn * (1 - dd))).epsilon(1e-12));
    }
}

TEST_CASE("full report aggregates the individual operations") {
    const auto p = fx::reference();
    const an::DesignRipple r(1.0);
    const auto rep = an::full_report(p, r);
    const auto v = an::cap_voltages(p);
    const auto pk = an::peak_currents(p);
    const auto c = an::min_capacitances(p, r);
    CHECK(rep.m == Approx(8.0).epsilon(1e-12));
    CHECK(rep.v_o == Approx(240.0).epsilon(1e-12));
    CHECK(rep.v_o == rep.v_c2 + rep.v_c3);
    CHECK(rep.v_c1 == v.v_c1);
    CHECK(rep.v_c2 == v.v_c2);
    CHECK(rep.i_d1_peak == pk.i_d1_peak);
    CHECK(rep.i_lm_avg == an::avg_magnetizing_current(p));
    CHECK(rep.d34 == an::clamp_interval_fraction(p));
    CHECK(rep.lm_min == an::ccm_min_lm(p));
    CHECK(rep.c2_min == c.c2_min);
    CHECK(rep.v_ppc.value() == 1.0);
    CHECK_FALSE(an::full_report(p).v_ppc.has_value());
}

TEST_CASE("duty inversion round trip") {
    for (double n : {1.0, 2.0, 3.0}) {
        for (int i = 1; i < 200; ++i) {
            const double d = i / 200.0 * design::kDefaultMaxDuty;
            const double m = an::gain(d, n);
            const double back = design::solve_duty(m, n);
            CHECK(std::fabs(an::gain(back, n) - m) <= 1e-12 * m);
            CHECK(back == Approx(d).epsilon(1e-12));
        }
    }
}
