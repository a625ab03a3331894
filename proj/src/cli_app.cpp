#include "gridtie/cli_app.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "gridtie/config.hpp"
#include "gridtie/csv_io.hpp"
#include "gridtie/errors.hpp"
#include "gridtie/steady_state.hpp"
#include "gridtie/switched_sim.hpp"
#include "gridtie/tlb_converter.hpp"

namespace gridtie {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view text, const char* what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw Error(Errc::bad_argument, std::string(what) + ": cannot parse '" +
                                            std::string(text) + "' as a real number");
    }
    return v;
}

std::vector<double> parse_real_list(std::string_view text, const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        std::string_view piece =
            comma == std::string_view::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        piece = trim_view(piece);
        if (piece.empty()) {
            throw Error(Errc::bad_argument, std::string(what) + ": empty list element");
        }
        out.push_back(parse_real(piece, what));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

Config make_config(const std::string& config_path, const std::vector<std::string>& sets) {
    Config cfg;
    if (!config_path.empty()) load_config_file(cfg, config_path);
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw Error(Errc::bad_config, "--set expects key=value, got '" + kv + "'");
        }
        const std::string_view sv{kv};
        apply_override(cfg, trim_view(sv.substr(0, eq)), trim_view(sv.substr(eq + 1)));
    }
    return cfg;
}

double signed_pf(double pf, bool leading) {
    if (!(pf > 0.0) || pf > 1.0) {
        throw Error(Errc::invalid_power_factor, "power factor out of range");
    }
    return leading ? -pf : pf;
}

IntegratorKind to_integrator(const std::string& name) {
    return name == "euler" ? IntegratorKind::euler : IntegratorKind::rk4;
}

void print_metrics(const SimRun& run) {
    for (const auto& w : run.waves) {
        const auto it = run.metrics.find(w.name);
        if (it == run.metrics.end()) continue;
        const auto& m = it->second;
        std::cout << w.name << ": mean=" << format_fixed(m.mean)
                  << " ripple_pp=" << format_fixed(m.ripple_pp)
                  << " settle_time=" << format_fixed(m.settle_time) << '\n';
    }
}

std::string plot_preamble(const std::filesystem::path& plot) {
    std::string s;
    s += "# gnuplot script; run as: gnuplot " + plot.generic_string() + "\n";
    s += "set datafile separator ','\n";
    s += "set key autotitle columnhead\n";
    s += "set terminal pngcairo size 1350,450\n";
    return s;
}

std::string png_name(const std::filesystem::path& csv) {
    std::filesystem::path p = csv;
    p.replace_extension(".png");
    return p.generic_string();
}

void write_sweep_plot(const std::filesystem::path& plot, const std::filesystem::path& csv) {
    const std::string c = csv.generic_string();
    std::string s = plot_preamble(plot);
    s += "set output '" + png_name(csv) + "'\n";
    s += "set multiplot layout 1,3\n";
    s += "set xlabel 'Md'\nset ylabel 'Mq'\n";
    s += "plot '" + c + "' using 3:2 with linespoints pointtype 7\n";
    s += "set xlabel 'pf'\nset ylabel 'Ipeak (A)'\n";
    s += "plot '" + c + "' using 1:6 with linespoints pointtype 7\n";
    s += "set xlabel 'pf'\nset ylabel 'Pg_{ac} (W)'\n";
    s += "plot '" + c + "' using 1:8 with linespoints pointtype 7\n";
    s += "unset multiplot\n";
    write_text_atomic(plot, s);
}

std::string wave_plot_block(const std::filesystem::path& csv, std::size_t value_columns) {
    std::string s = "set output '" + png_name(csv) + "'\n";
    s += "set xlabel 't (s)'\nset ylabel ''\n";
    s += "plot ";
    for (std::size_t col = 2; col <= value_columns + 1; ++col) {
        if (col > 2) s += ", ";
        s += (col == 2 ? "'" + csv.generic_string() + "'" : std::string("''"));
        s += " using 1:" + std::to_string(col) + " with lines";
    }
    s += "\n";
    return s;
}

void write_wave_plot(const std::filesystem::path& plot,
                     const std::vector<std::pair<std::filesystem::path, std::size_t>>& csvs) {
    std::string s = plot_preamble(plot);
    for (const auto& [csv, cols] : csvs) s += wave_plot_block(csv, cols);
    write_text_atomic(plot, s);
}

int run_sweep(const Config& cfg, const std::string& pf_text, bool leading,
              const std::string& out, const std::string& plot) {
    std::vector<double> pfs = parse_real_list(pf_text, "--pf");
    for (double& pf : pfs) pf = signed_pf(pf, leading);

    const auto entries = pf_sweep(pfs, cfg.p_target_watts, grid_params(cfg));

    std::string csv = "pf,Mq,Md,Iq,Id,Ipeak,Pg_dc,Pg_ac\n";
    std::vector<SteadyStateRow> rows;
    int failures = 0;
    for (const auto& e : entries) {
        if (!e.row) {
            ++failures;
            std::cerr << "sweep: numerical failure at pf=" << format_fixed(e.pf) << ": " << e.error
                      << '\n';
            continue;
        }
        const auto& r = *e.row;
        const double mag = ModulationPair{r.mq, r.md}.magnitude();
        if (mag > 1.0) {
            std::cerr << "warning: modulation magnitude " << format_fixed(mag)
                      << " exceeds 1 at pf=" << format_fixed(r.pf) << '\n';
        }
        csv += format_fixed(r.pf) + ',' + format_fixed(r.mq) + ',' + format_fixed(r.md) + ',' +
               format_fixed(r.iq) + ',' + format_fixed(r.id) + ',' + format_fixed(r.ipeak) + ',' +
               format_fixed(r.pg_dc) + ',' + format_fixed(r.pg_ac) + '\n';
        rows.push_back(r);
    }
    write_text_atomic(out, csv);
    std::cout << "wrote " << out << " (" << rows.size() << " rows)\n";
    if (rows.size() >= 2) {
        const auto trend = trend_series(rows);
        if (!trend.degenerate_fit) {
            std::cout << "mq-md linear fit r2=" << format_fixed(trend.r_squared_mq_md) << '\n';
        }
    }
    if (!plot.empty()) write_sweep_plot(plot, out);
    return failures > 0 ? 2 : 0;
}

struct SimulateOpts {
    std::string target;
    double d1 = kUnset;
    double d4 = kUnset;
    double pf = kUnset;
    bool leading = false;
    double dt = kUnset;
    double t_end = kUnset;
    std::string integrator = "rk4";
    int decimate = 1;
    std::string preset;
    std::string out = "sim.csv";
    std::string plot;
};

DutyPair checked_duties(const SimulateOpts& o) {
    if (std::isnan(o.d1) || std::isnan(o.d4)) {
        throw Error(Errc::bad_argument,
                    "simulate " + o.target + " requires --d1 and --d4");
    }
    if (!(o.d1 >= 0.0 && o.d1 <= 1.0 && o.d4 >= 0.0 && o.d4 <= 1.0)) {
        throw Error(Errc::bad_argument, "duty out of range");
    }
    return DutyPair{o.d1, o.d4};
}

SimRun run_converter_stage(const Config& cfg, const DutyPair& d, const SimConfig& sc) {
    const double vo_target = cfg.vs_volts * voltage_gain(d);
    return simulate_converter(converter_params(cfg, vo_target), d, sc);
}

struct InverterStage {
    SimRun run;
    SteadyStateRow op;
};

InverterStage run_inverter_stage(const Config& cfg, double pf, bool steady_start,
                                 const SimConfig& sc) {
    const GridParams g = grid_params(cfg);
    const SteadyStateRow op = solve_point(OperatingPoint{pf, cfg.p_target_watts}, g);
    const ModulationPair m{op.mq, op.md};
    if (m.magnitude() > 1.0) {
        std::cerr << "warning: modulation magnitude " << format_fixed(m.magnitude())
                  << " exceeds 1\n";
    }
    DqCurrents i0{0.0, 0.0};
    if (steady_start) i0 = DqCurrents{op.iq, op.id};
    return InverterStage{simulate_inverter_dq(g, m, i0, sc), op};
}

void write_run(const std::filesystem::path& path, const SimRun& run) {
    write_text_atomic(path, waveform_csv(run.waves, 9));
    print_metrics(run);
    std::cout << "wrote " << path.generic_string() << " ("
              << run.waves.front().samples.size() << " rows)\n";
}

int run_simulate(const Config& cfg, SimulateOpts o) {
    bool steady_start = false;
    if (!o.preset.empty()) {
        if (o.preset != "snapshot-2ms") {
            throw Error(Errc::bad_argument, "unknown preset '" + o.preset + "'");
        }
        if (o.target != "inverter") {
            throw Error(Errc::bad_argument, "preset snapshot-2ms applies to the inverter target");
        }
        if (std::isnan(o.pf)) {
            o.pf = std::cos(std::numbers::pi / 36.0);
            o.leading = false;
        }
        if (std::isnan(o.t_end)) o.t_end = 2e-3;
        if (std::isnan(o.dt)) o.dt = 1e-6;
        steady_start = true;
    }

    SimConfig base;
    base.f_sw = cfg.f_sw_hz;
    base.integrator = to_integrator(o.integrator);
    base.record_decimation = o.decimate;

    const double switched_dt = 1.0 / (200.0 * cfg.f_sw_hz);

    if (o.target == "converter") {
        SimConfig sc = base;
        sc.dt = std::isnan(o.dt) ? switched_dt : o.dt;
        sc.t_end = std::isnan(o.t_end) ? 0.05 : o.t_end;
        const SimRun run = run_converter_stage(cfg, checked_duties(o), sc);
        write_run(o.out, run);
        if (!o.plot.empty()) write_wave_plot(o.plot, {{o.out, run.waves.size()}});
        return 0;
    }

    if (o.target == "inverter") {
        SimConfig sc = base;
        sc.dt = std::isnan(o.dt) ? 1e-5 : o.dt;
        sc.t_end = std::isnan(o.t_end) ? 0.1 : o.t_end;
        const double pf = signed_pf(std::isnan(o.pf) ? 1.0 : o.pf, o.leading);
        const InverterStage stage = run_inverter_stage(cfg, pf, steady_start, sc);
        std::cout << "operating point: Iq=" << format_fixed(stage.op.iq)
                  << " Id=" << format_fixed(stage.op.id) << " Mq=" << format_fixed(stage.op.mq)
                  << " Md=" << format_fixed(stage.op.md) << '\n';
        write_run(o.out, stage.run);
        if (stage.run.steady_time) {
            std::cout << "steady_state_time=" << format_fixed(*stage.run.steady_time) << '\n';
        } else {
            std::cout << "steady_state_time=n/a\n";
        }
        if (!o.plot.empty()) write_wave_plot(o.plot, {{o.out, stage.run.waves.size()}});
        return 0;
    }

    // chain: switched converter feeds the averaged inverter with its mean vo.
    SimConfig scc = base;
    scc.dt = std::isnan(o.dt) ? switched_dt : o.dt;
    scc.t_end = std::isnan(o.t_end) ? 0.05 : o.t_end;
    const SimRun conv = run_converter_stage(cfg, checked_duties(o), scc);

    const auto vo_it = conv.metrics.find("vo");
    if (vo_it == conv.metrics.end()) {
        throw Error(Errc::window_too_short, "chain run too short to estimate the dc-link voltage");
    }
    Config linked = cfg;
    linked.vdc_volts = vo_it->second.mean;

    SimConfig sci = base;
    sci.dt = std::isnan(o.dt) ? 1e-5 : o.dt;
    sci.t_end = std::isnan(o.t_end) ? 0.1 : o.t_end;
    const double pf = signed_pf(std::isnan(o.pf) ? 1.0 : o.pf, o.leading);
    const InverterStage stage = run_inverter_stage(linked, pf, steady_start, sci);

    std::filesystem::path stem{o.out};
    stem.replace_extension();
    const std::filesystem::path conv_path = stem.generic_string() + "_converter.csv";
    const std::filesystem::path inv_path = stem.generic_string() + "_inverter.csv";

    std::cout << "[converter]\n";
    write_run(conv_path, conv);
    std::cout << "[inverter] dc link " << format_fixed(linked.vdc_volts) << " V\n";
    write_run(inv_path, stage.run);
    if (!o.plot.empty()) {
        write_wave_plot(o.plot, {{conv_path, conv.waves.size()}, {inv_path, stage.run.waves.size()}});
    }
    return 0;
}

int run_gain(const std::string& d1_text, const std::string& d4_text, const std::string& out) {
    const std::vector<double> d1s = parse_real_list(d1_text, "--d1");
    std::vector<DutyPair> pairs;
    if (d4_text.empty()) {
        for (const double d : d1s) pairs.push_back(DutyPair{d, d});
    } else {
        const std::vector<double> d4s = parse_real_list(d4_text, "--d4");
        for (const double a : d1s) {
            for (const double b : d4s) pairs.push_back(DutyPair{a, b});
        }
    }
    if (pairs.empty()) {
        throw Error(Errc::bad_argument, "empty duty grid");
    }
    for (const auto& d : pairs) {
        if (!(d.d1 >= 0.0 && d.d1 <= 1.0 && d.d4 >= 0.0 && d.d4 <= 1.0)) {
            throw Error(Errc::bad_argument, "duty out of range");
        }
        if (d.d1 + d.d4 <= 0.0) {
            throw Error(Errc::bad_argument, "d1+d4 must be positive");
        }
    }
    std::string csv = "d1,d4,gain,io_over_il\n";
    for (const auto& d : pairs) {
        csv += format_fixed(d.d1) + ',' + format_fixed(d.d4) + ',' +
               format_fixed(voltage_gain(d)) + ',' + format_fixed(average_current_ratio(d)) + '\n';
    }
    write_text_atomic(out, csv);
    std::cout << "wrote " << out << " (" << pairs.size() << " rows)\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Power-chain toolkit: three-level dc-dc converter and grid-tied inverter "
                 "steady-state analysis and time-domain simulation"};
    app.name("gridtie");
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "Flat 'key = value' parameter file");
    app.add_option("--set", sets, "Override one parameter as key=value (repeatable)");

    auto* sweep = app.add_subcommand(
        "sweep", "Solve steady-state operating points over a power-factor list");
    sweep->fallthrough();
    std::string pf_text;
    bool sweep_leading = false;
    std::string sweep_out = "sweep.csv";
    std::string sweep_plot;
    sweep->add_option("--pf", pf_text, "Comma-separated power factors in (0,1]")->required();
    sweep->add_flag("--leading", sweep_leading, "Treat the power factors as leading (capacitive)");
    sweep->add_option("--out", sweep_out, "Output CSV path");
    sweep->add_option("--plot", sweep_plot, "Also write a gnuplot script to this path");

    auto* sim = app.add_subcommand("simulate", "Run a fixed-step time-domain simulation");
    sim->fallthrough();
    SimulateOpts so;
    sim->add_option("target", so.target, "What to simulate")
        ->required()
        ->check(CLI::IsMember({"converter", "inverter", "chain"}));
    sim->add_option("--d1", so.d1, "Duty ratio of the outer high-side switch pair");
    sim->add_option("--d4", so.d4, "Duty ratio of the outer low-side switch pair");
    sim->add_option("--pf", so.pf, "Inverter power factor in (0,1] (default 1.0)");
    sim->add_flag("--leading", so.leading, "Leading (capacitive) power factor");
    sim->add_option("--dt", so.dt, "Fixed integration step in seconds");
    sim->add_option("--t-end", so.t_end, "Simulated duration in seconds");
    sim->add_option("--integrator", so.integrator, "Integration scheme")
        ->check(CLI::IsMember({"euler", "rk4"}));
    sim->add_option("--decimate", so.decimate, "Record every n-th step")
        ->check(CLI::PositiveNumber);
    sim->add_option("--preset", so.preset, "Named scenario (snapshot-2ms)");
    sim->add_option("--out", so.out, "Output CSV path (chain appends _converter/_inverter)");
    sim->add_option("--plot", so.plot, "Also write a gnuplot script to this path");

    auto* gain = app.add_subcommand(
        "gain", "Tabulate duty-ratio sweep: voltage gain and average current ratio");
    gain->fallthrough();
    std::string d1_text;
    std::string d4_text;
    std::string gain_out = "gain.csv";
    gain->add_option("--d1", d1_text, "Comma-separated d1 values")->required();
    gain->add_option("--d4", d4_text,
                     "Comma-separated d4 values (full cross product; omitted means d4=d1)");
    gain->add_option("--out", gain_out, "Output CSV path");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("gridtie");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        const Config cfg = make_config(config_path, sets);
        if (sweep->parsed()) return run_sweep(cfg, pf_text, sweep_leading, sweep_out, sweep_plot);
        if (sim->parsed()) return run_simulate(cfg, std::move(so));
        if (gain->parsed()) return run_gain(d1_text, d4_text, gain_out);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.numerical() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace gridtie
