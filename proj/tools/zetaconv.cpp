// zetaconv: batch front-end. Exit codes: 0 ok (DCM and infeasible designs
// are results), 1 I/O, 2 validation, 3 numerical failure.

#include "zeta/analytics.hpp"
#include "zeta/comparison.hpp"
#include "zeta/crosscheck.hpp"
#include "zeta/design.hpp"
#include "zeta/report_io.hpp"
#include "zeta/simulator.hpp"
#include "zeta/sweep.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kIo = 1, kValidation = 2, kNumerical = 3 };

struct Options {
    std::string input;
    std::string out;
    std::string format = "json";
    std::optional<double> ripple;
    int steps = 4000;
    double tol = 1e-6;
    int max_periods = 20000;
    bool verify = false;
    double n = 2.0;
    std::optional<double> duty;
    std::string duty_range = "0.05:0.95:0.05";
    std::string topologies;
    int periods = 0;
    bool no_converge = false;
    bool warm = false;
};

zeta::sim::SimConfig sim_config(const Options& o) {
    zeta::sim::SimConfig c;
    c.steps_per_period = o.steps;
    c.convergence_tol = o.tol;
    c.max_periods = o.max_periods;
    c.warm_start = o.warm;
    c.validate();
    return c;
}

fs::path out_dir(const Options& o) {
    fs::path d = o.out.empty() ? fs::path(".") : fs::path(o.out);
    std::error_code ec;
    fs::create_directories(d, ec);
    if (ec || !fs::is_directory(d)) throw zeta::io::IoError("cannot create output directory " + d.string());
    return d;
}

// json to stdout when no --out was given, else to <out>/<name>
void emit_json(const Options& o, const std::string& name, const json& j) {
    const std::string text = j.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
    } else {
        zeta::io::save_text(out_dir(o) / name, text);
    }
}

std::string render(void (*fn)(std::ostream&, double, double), double a, double b) {
    std::ostringstream os;
    fn(os, a, b);
    return os.str();
}

int cmd_analyze(const Options& o) {
    const auto p = zeta::io::read_params(o.input);
    std::optional<zeta::analytics::DesignRipple> r;
    if (o.ripple) r.emplace(*o.ripple);
    const auto rep = zeta::analytics::full_report(p, r);
    emit_json(o, "analyze.json", zeta::io::stamped(zeta::io::params_json(p), zeta::io::report_json(rep)));
    return kOk;
}

int cmd_simulate(const Options& o) {
    const auto p = zeta::io::read_params(o.input);
    const auto cfg = sim_config(o);
    const auto dir = out_dir(o);

    zeta::sim::SteadyState ss;
    if (o.no_converge || o.periods > 0) {
        ss = zeta::sim::run_periods(p, cfg, o.periods > 0 ? o.periods : 1);
    } else {
        ss = zeta::sim::run_to_steady_state(p, cfg);
    }
    const auto params = zeta::io::params_json(p);

    if (o.format == "json") {
        json pts = json::array();
        for (const auto& pt : ss.trace.points) {
            const auto& x = pt.x;
            pts.push_back({x.t, zeta::pattern_name(pt.pattern), x.i_l1, x.i_lk, x.i_lm, x.v_c1, x.v_c2, x.v_c3,
                           x.v_c4, x.v_o()});
        }
        json trace = {{"columns", {"t", "mode", "i_l1", "i_lk", "i_lm", "v_c1", "v_c2", "v_c3", "v_c4", "v_o"}},
                      {"rows", pts}};
        zeta::io::save_text(dir / "trace.json", zeta::io::stamped(params, trace).dump() + "\n");
    } else {
        std::ostringstream os;
        zeta::io::write_trace_csv(os, ss.trace, p);
        zeta::io::save_text(dir / "trace.csv", os.str());
    }
    zeta::io::save_text(dir / "metrics.json",
                        zeta::io::stamped(params, zeta::io::metrics_json(ss.metrics)).dump(2) + "\n");

    // closed forms are CCM-only: no comparison table for a DCM period
    if (ss.metrics.regime != zeta::Regime::DCM) {
        std::optional<zeta::analytics::DesignRipple> r;
        if (o.ripple) r.emplace(*o.ripple);
        const auto rows = zeta::cross_validate(zeta::analytics::full_report(p, r), ss.metrics);
        std::ostringstream os;
        zeta::io::write_compare_csv(os, rows, p);
        zeta::io::save_text(dir / "compare.csv", os.str());
    } else {
        std::error_code ec;
        fs::remove(dir / "compare.csv", ec);
    }
    std::cerr << "regime " << zeta::regime_name(ss.metrics.regime) << ", " << ss.metrics.periods
              << " periods, gain " << ss.metrics.gain << "\n";
    return kOk;
}

std::vector<zeta::comparison::Topology> parse_topologies(const std::string& list) {
    std::vector<zeta::comparison::Topology> ts;
    if (list.empty()) {
        for (const auto& t : zeta::comparison::topologies()) ts.push_back(t.id);
        return ts;
    }
    std::stringstream ss(list);
    std::string key;
    while (std::getline(ss, key, ',')) {
        try {
            ts.push_back(zeta::comparison::model(key).id);
        } catch (const std::invalid_argument& e) {
            throw zeta::ValidationError({{"topology", 0.0, e.what()}});
        }
    }
    return ts;
}

int cmd_sweep_gain(const Options& o) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream rs(o.duty_range);
    if (!(rs >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !rs.eof() || !(a > 0.0) || !(b < 1.0) ||
        !(step > 0.0) || b < a) {
        throw zeta::ValidationError({{"duty-range", std::nan(""), "a:b:step with 0 < a <= b < 1, step > 0"}});
    }
    if (!(o.n > 0.0)) throw zeta::ValidationError({{"n", o.n, "> 0"}});
    const auto ts = parse_topologies(o.topologies);
    const auto grid = zeta::comparison::duty_grid(a, b, step);
    const auto rows = zeta::sweep::sweep_gain_parallel(ts, grid, o.n);

    json keys = json::array();
    for (auto t : ts) keys.push_back(zeta::comparison::model(t).key);
    json meta = {{"version", zeta::io::kVersion},
                 {"n", o.n},
                 {"n_note", "the same n is used for every n-dependent formula"},
                 {"duty_range", {{"start", a}, {"stop", b}, {"step", step}, {"points", grid.size()}}},
                 {"topologies", keys}};
    const auto dir = out_dir(o);
    if (o.format == "json") {
        json a_rows = json::array();
        for (const auto& r : rows) {
            a_rows.push_back({{"duty", r.duty}, {"topology", zeta::comparison::model(r.topology).key}, {"gain", r.gain}});
        }
        meta["rows"] = a_rows;
        zeta::io::save_text(dir / "gains.json", meta.dump(2) + "\n");
    } else {
        std::ostringstream os;
        zeta::io::write_gains_csv(os, rows, o.n);
        zeta::io::save_text(dir / "gains.csv", os.str());
        zeta::io::save_text(dir / "gains_meta.json", meta.dump(2) + "\n");
    }
    return kOk;
}

int cmd_design(const Options& o) {
    const auto spec = zeta::io::design_spec_from(zeta::io::load_json(o.input));
    const auto result = zeta::design::size_converter(spec);
    auto j = zeta::io::design_json(result);
    if (o.verify) {
        j["verification"] = zeta::io::verification_json(zeta::design::verify_design(result, sim_config(o)));
    }
    emit_json(o, "design.json", j);
    return kOk;
}

int cmd_compare(const Options& o) {
    const auto p = zeta::io::read_params(o.input);
    const double d = o.duty.value_or(p.duty());
    const double n = p.n();
    if (o.format == "csv") {
        const auto text = render(zeta::io::write_topology_csv, d, n);
        if (o.out.empty()) {
            std::cout << text;
        } else {
            zeta::io::save_text(out_dir(o) / "compare_topologies.csv", text);
        }
        return kOk;
    }
    if (o.format == "json") {
        emit_json(o, "compare_topologies.json",
                  zeta::io::stamped(zeta::io::params_json(p), {{"duty", d}, {"n", n},
                                                               {"topologies", zeta::io::topology_table_json(d, n)}}));
        return kOk;
    }
    // plain table
    std::ostringstream os;
    os << "duty " << zeta::io::num(d) << "  n " << zeta::io::num(n) << "  (zetaconv " << zeta::io::kVersion << ")\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-20s %8s %7s %10s %9s %3s %10s\n", "topology", "switches", "diodes",
                  "capacitors", "inductors", "CP", "gain");
    os << line;
    for (const auto& t : zeta::comparison::topologies()) {
        const std::string label(t.label);
        const double g = zeta::comparison::gain_of(t, d, n);
        if (t.counts) {
            std::snprintf(line, sizeof line, "%-20s %8d %7d %10d %9d %3s %10.4f\n", label.c_str(), t.counts->switches,
                          t.counts->diodes, t.counts->capacitors, t.counts->inductors,
                          t.counts->coupled_inductor ? "yes" : "no", g);
        } else {
            std::snprintf(line, sizeof line, "%-20s %8s %7s %10s %9s %3s %10.4f\n", label.c_str(), "-", "-", "-", "-",
                          "-", g);
        }
        os << line;
    }
    if (o.out.empty()) {
        std::cout << os.str();
    } else {
        zeta::io::save_text(out_dir(o) / "compare_topologies.txt", os.str());
    }
    return kOk;
}

int guarded(int (*fn)(const Options&), const Options& o) {
    try {
        return fn(o);
    } catch (const zeta::io::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const zeta::ValidationError& e) {
        for (const auto& v : e.violations()) std::cerr << "invalid: " << v.message() << "\n";
        return kValidation;
    } catch (const zeta::sim::SimulationError& e) {
        std::cerr << "simulation failed: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return kValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled-inductor Zeta step-up converter: analysis, simulation and design"};
    app.set_version_flag("--version", zeta::io::kVersion);
    app.require_subcommand(1);
    Options o;

    auto* analyze = app.add_subcommand("analyze", "closed-form steady-state report");
    analyze->add_option("params", o.input, "parameter JSON")->required();
    analyze->add_option("--out", o.out, "output directory (default stdout)");
    analyze->add_option("--ripple", o.ripple, "capacitor ripple target in volts; adds capacitor minima");

    auto* simulate = app.add_subcommand("simulate", "time-domain simulation to periodic steady state");
    simulate->add_option("params", o.input, "parameter JSON")->required();
    simulate->add_option("--out", o.out, "output directory (default .)");
    simulate->add_option("--format", o.format, "trace format")->check(CLI::IsMember({"csv", "json"}));
    simulate->add_option("--ripple", o.ripple, "capacitor ripple target in volts");
    simulate->add_option("--steps", o.steps, "RK4 steps per period");
    simulate->add_option("--tol", o.tol, "convergence tolerance");
    simulate->add_option("--max-periods", o.max_periods, "period limit");
    simulate->add_option("--periods", o.periods, "run exactly this many periods");
    simulate->add_flag("--no-converge", o.no_converge, "skip the convergence loop");
    simulate->add_flag("--warm", o.warm, "start from the closed-form operating point");

    auto* sweep = app.add_subcommand("sweep-gain", "gain versus duty for every topology");
    sweep->add_option("--out", o.out, "output directory (default .)");
    sweep->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--n", o.n, "turns ratio for n-dependent formulas");
    sweep->add_option("--duty-range", o.duty_range, "a:b:step");
    sweep->add_option("--topologies", o.topologies, "comma-separated subset");

    auto* design = app.add_subcommand("design", "component sizing from a design spec");
    design->add_option("spec", o.input, "design spec JSON")->required();
    design->add_option("--out", o.out, "output directory (default stdout)");
    design->add_flag("--verify", o.verify, "simulate every feasible candidate");
    design->add_option("--steps", o.steps, "RK4 steps per period (verification)");
    design->add_option("--tol", o.tol, "convergence tolerance (verification)");
    design->add_option("--max-periods", o.max_periods, "period limit (verification)");
    design->add_flag("--warm", o.warm, "warm-start verification runs");

    auto* compare = app.add_subcommand("compare", "component counts and gains of all topologies");
    compare->add_option("params", o.input, "parameter JSON")->required();
    compare->add_option("--out", o.out, "output directory (default stdout)");
    compare->add_option("--format", o.format, "table format")->check(CLI::IsMember({"text", "csv", "json"}));
    compare->add_option("--duty", o.duty, "duty override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kValidation;
    }
    // sweep-gain defaults to csv, compare to a text table
    if (sweep->parsed() && sweep->count("--format") == 0) o.format = "csv";
    if (simulate->parsed() && simulate->count("--format") == 0) o.format = "csv";
    if (compare->parsed() && compare->count("--format") == 0) o.format = "text";

    if (analyze->parsed()) return guarded(cmd_analyze, o);
    if (simulate->parsed()) return guarded(cmd_simulate, o);
    if (sweep->parsed()) return guarded(cmd_sweep_gain, o);
    if (design->parsed()) return guarded(cmd_design, o);
    return guarded(cmd_compare, o);
}
