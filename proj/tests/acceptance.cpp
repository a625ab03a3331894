// Acceptance harness: one line per criterion, PASS or FAIL, with indented
// diagnostics for anything out of tolerance. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gridtie/cli_app.hpp"
#include "gridtie/csv_io.hpp"
#include "gridtie/reference_frames.hpp"
#include "gridtie/steady_state.hpp"
#include "gridtie/switched_sim.hpp"
#include "gridtie/tlb_converter.hpp"

using namespace gridtie;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    bool pass = true;
    std::vector<std::string> notes;

    void fail(const std::string& note) {
        pass = false;
        notes.push_back(note);
    }
    void info(const std::string& note) { notes.push_back(note); }
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Reference operating-point table, reproduced through the CLI sweep.
// ---------------------------------------------------------------------------
Criterion criterion_table() {
    Criterion c;
    const fs::path dir = fs::current_path() / "acceptance_scratch";
    fs::create_directories(dir);
    const fs::path out = dir / "table.csv";

    std::ostringstream sink;
    auto* old = std::cout.rdbuf(sink.rdbuf());
    const int code = run_cli({"sweep", "--pf", "0.2,0.4,0.6,0.8", "--out", out.string()});
    std::cout.rdbuf(old);
    if (code != 0) {
        c.fail("sweep command exited with code " + std::to_string(code));
        return c;
    }

    std::ifstream in(out);
    std::string line;
    std::getline(in, line);  // header
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> cells;
        std::istringstream cs(line);
        std::string cell;
        while (std::getline(cs, cell, ',')) cells.push_back(std::stod(cell));
        rows.push_back(std::move(cells));
    }
    if (rows.size() != 4) {
        c.fail("expected 4 sweep rows, got " + std::to_string(rows.size()));
        return c;
    }

    // Reference values with their acceptance tolerances. rel == false means
    // an absolute band.
    struct Column {
        const char* name;
        int index;
        double tol;
        bool rel;
        double expected[4];
    };
    const Column columns[] = {
        {"Iq", 3, 0.01, true, {2.41, 2.47, 2.49, 2.5}},
        {"Id", 4, 0.01, true, {-11.8, -5.7, -3.3, -1.9}},
        {"Ipeak", 5, 0.01, true, {12.04, 6.91, 4.15, 3.12}},
        {"Mq", 1, 0.005, true, {0.779, 0.791, 0.795, 0.795}},
        {"Md", 2, 0.002, false, {-0.010, -0.008, -0.006, -0.006}},
        {"Pg_dc", 6, 0.015, true, {598.0, 594.0, 597.0, 598.0}},
    };
    const double pfs[] = {0.2, 0.4, 0.6, 0.8};

    int bad = 0, total = 0;
    for (const Column& col : columns) {
        for (int r = 0; r < 4; ++r) {
            ++total;
            const double got = rows[r][static_cast<std::size_t>(col.index)];
            const double want = col.expected[r];
            const double band = col.rel ? col.tol * std::abs(want) : col.tol;
            if (std::abs(got - want) > band) {
                ++bad;
                c.fail(std::string(col.name) + " at pf=" + num(pfs[r]) + ": got " + num(got) +
                       ", reference " + num(want) + ", band +/-" + num(band));
            }
        }
    }
    if (bad > 0) {
        c.info("note: the pf=0.4 reference Ipeak 6.91 contradicts its own row, "
               "sqrt(2.47^2 + 5.7^2) = 6.21; the model value is the row-consistent one");
        c.info("note: the pf=0.8 reference Id -1.9 is a two-digit print of -1.87; "
               "the +/-1% band is narrower than that rounding");
        c.info(num(total - bad) + " of " + num(total) + " cells within tolerance");
    }
    return c;
}

// ---------------------------------------------------------------------------
// 2. Switched-simulation voltage gain against the averaged prediction.
// ---------------------------------------------------------------------------
Criterion criterion_switched_gain() {
    Criterion c;
    for (const double duty : {0.5, 0.6, 0.8, 1.0}) {
        const DutyPair d{duty, duty};
        const double gain = voltage_gain(d);
        const double vo_target = 400.0 * gain;
        ConverterParams p;
        p.vs = 400.0;
        p.load = ResistiveLoad{vo_target * vo_target / 600.0};
        SimConfig sc;
        sc.dt = 1.0 / (200.0 * sc.f_sw);
        sc.t_end = 0.05;
        const SimRun run = simulate_converter(p, d, sc);
        const double vo_mean = run.metrics.at("vo").mean;
        if (std::abs(vo_mean / 400.0 - gain) > 0.05 * gain) {
            c.fail("d=" + num(duty) + ": mean(vo)/Vs = " + num(vo_mean / 400.0) +
                   " vs gain " + num(gain));
        }
        const double vc1 = run.metrics.at("vc1").mean;
        const double vc2 = run.metrics.at("vc2").mean;
        if (std::abs(vc1 - vc2) > 0.02 * (vo_mean / 2.0)) {
            c.fail("d=" + num(duty) + ": capacitor means unbalanced: " + num(vc1) + " vs " +
                   num(vc2));
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 3. Averaged-dq convergence to the operating-point solver.
// ---------------------------------------------------------------------------
Criterion criterion_convergence() {
    Criterion c;
    const GridParams g;
    for (const double pf : {0.2, 0.4, 0.6, 0.8}) {
        const SteadyStateRow op = solve_point({pf, 600.0}, g);
        const DqCurrents fixed{op.iq, op.id};
        const DqCurrents residual = dq_dynamics(fixed, ModulationPair{op.mq, op.md}, g);
        if (std::abs(residual.iq) > 1e-9 || std::abs(residual.id) > 1e-9) {
            c.fail("pf=" + num(pf) + ": solver point is not a fixed point, residual (" +
                   num(residual.iq) + ", " + num(residual.id) + ") A/s");
        }
        SimConfig sc;
        sc.dt = 1e-5;
        sc.t_end = 0.1;
        const SimRun run =
            simulate_inverter_dq(g, ModulationPair{op.mq, op.md}, DqCurrents{0.0, 0.0}, sc);
        const double iq = run.wave("iq").samples.back();
        const double id = run.wave("id").samples.back();
        if (std::abs(iq - op.iq) > 0.01 * std::abs(op.iq) ||
            std::abs(id - op.id) > 0.01 * std::abs(op.id)) {
            c.fail("pf=" + num(pf) + ": converged to (" + num(iq) + ", " + num(id) +
                   "), solver (" + num(op.iq) + ", " + num(op.id) + ")");
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 4. Algebraic identities.
// ---------------------------------------------------------------------------
Criterion criterion_identities() {
    Criterion c;
    std::mt19937 rng(20240601u);

    // Power balance over randomized operating points.
    {
        std::uniform_real_distribution<double> amps(-30.0, 30.0);
        std::uniform_real_distribution<double> ohms(0.0, 2.0);
        std::uniform_real_distribution<double> volts(100.0, 900.0);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            GridParams g;
            g.resistance = ohms(rng);
            g.vdc = volts(rng);
            g.vqg = volts(rng) / 3.0;
            const DqCurrents i{amps(rng), amps(rng)};
            const double lhs = g.vdc * dc_link_current(modulation_indices(i, g), i);
            const double rhs =
                1.5 * g.vqg * i.iq + 1.5 * g.resistance * (i.iq * i.iq + i.id * i.id);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
        if (worst > 1e-9) c.fail("power-balance residual " + num(worst));
    }

    // Park round trip.
    {
        std::uniform_real_distribution<double> amp(-100.0, 100.0);
        std::uniform_real_distribution<double> ang(-30.0, 30.0);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const ThreePhase f{amp(rng), amp(rng), amp(rng)};
            const double theta = ang(rng);
            const ThreePhase back = inverse_park(park(f, theta), theta);
            worst = std::max({worst, std::abs(back.a - f.a), std::abs(back.b - f.b),
                              std::abs(back.c - f.c)});
        }
        if (worst > 1e-12) c.fail("park round-trip residual " + num(worst));
    }

    // Gain-ratio reciprocity.
    {
        std::uniform_real_distribution<double> u(0.01, 1.0);
        for (int k = 0; k < 500; ++k) {
            const DutyPair d{u(rng), u(rng)};
            const double prod = voltage_gain(d) * average_current_ratio(d);
            if (std::abs(prod - 1.0) > 1e-12) {
                c.fail("gain*ratio = " + num(prod) + " at d1=" + num(d.d1) +
                       " d4=" + num(d.d4));
                break;
            }
        }
    }

    // Unified derivative vs the four per-mode equation sets.
    {
        ConverterParams p;
        p.inductance = 2e-4;
        p.c1 = 2.5e-4;
        p.c2 = 2.5e-4;
        p.vs = 400.0;
        std::uniform_real_distribution<double> u(-20.0, 400.0);
        for (int k = 0; k < 250; ++k) {
            const ConverterState x{u(rng) * 0.05, u(rng), u(rng)};
            const double io = u(rng) * 0.01;
            const double per_mode[4][3] = {
                {p.vs / p.inductance, -io / p.c1, -io / p.c2},
                {(p.vs - x.vc2) / p.inductance, -io / p.c1, (x.il - io) / p.c2},
                {(p.vs - x.vc1) / p.inductance, (x.il - io) / p.c1, -io / p.c2},
                {(p.vs - x.vc1 - x.vc2) / p.inductance, (x.il - io) / p.c1,
                 (x.il - io) / p.c2},
            };
            const bool bits[4][2] = {{false, false}, {false, true}, {true, false}, {true, true}};
            for (int mode = 0; mode < 4; ++mode) {
                const ConverterState dx = state_derivative(
                    x, SwitchState::from_outer(bits[mode][0], bits[mode][1]), p, io);
                const double err = std::max(
                    {std::abs(dx.il - per_mode[mode][0]) / std::max(1.0, std::abs(dx.il)),
                     std::abs(dx.vc1 - per_mode[mode][1]) / std::max(1.0, std::abs(dx.vc1)),
                     std::abs(dx.vc2 - per_mode[mode][2]) / std::max(1.0, std::abs(dx.vc2))});
                if (err > 1e-12) {
                    c.fail("mode " + std::to_string(mode + 1) + " derivative mismatch " +
                           num(err));
                }
            }
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 5. Trend properties of the lagging sweep.
// ---------------------------------------------------------------------------
Criterion criterion_trends() {
    Criterion c;
    const GridParams g;
    std::vector<SteadyStateRow> rows;
    for (const double pf : {0.2, 0.4, 0.6, 0.8}) rows.push_back(solve_point({pf, 600.0}, g));

    for (std::size_t k = 1; k < rows.size(); ++k) {
        if (!(rows[k].ipeak < rows[k - 1].ipeak)) {
            c.fail("ipeak not strictly decreasing at step " + std::to_string(k));
        }
    }

    const SteadyStateRow unity = solve_point({1.0, 600.0}, g);
    for (const SteadyStateRow& row : rows) {
        if (row.pg_ac > unity.pg_ac + 1e-9) {
            c.fail("delivered power at pf=" + num(row.pf) + " exceeds the unity point");
        }
    }

    const TrendSeries t = trend_series(rows);
    if (!(t.r_squared_mq_md > 0.99)) {
        c.fail("mq-md linear fit r2 = " + num(t.r_squared_mq_md));
    }
    return c;
}

// ---------------------------------------------------------------------------
// 6. Snapshot scenario: sinusoidal steady currents and settled power.
// ---------------------------------------------------------------------------
Criterion criterion_snapshot() {
    Criterion c;
    const GridParams g;
    const double pf = std::cos(std::numbers::pi / 36.0);
    const SteadyStateRow op = solve_point({pf, 600.0}, g);
    SimConfig sc;
    sc.dt = 1e-6;
    sc.t_end = 2e-3;
    const SimRun run = simulate_inverter_dq(g, ModulationPair{op.mq, op.md},
                                            DqCurrents{op.iq, op.id}, sc);

    if (!run.steady_time || *run.steady_time != 0.0) {
        c.fail("steady state not detected at the start of the snapshot");
    }

    const Waveform& p_wave = run.wave("P");
    const double p_expected = 1.5 * g.vqg * op.iq;
    for (const double v : p_wave.samples) {
        if (std::abs(v - p_expected) > 1e-6 * p_expected) {
            c.fail("P not settled within the snapshot window");
            break;
        }
    }

    // Sinusoidal phase currents: with the dq currents pinned at the operating
    // point, phase a must follow the constant-amplitude sinusoid
    // iq*cos(wt) + id*sin(wt), i.e. a pure tone at the grid frequency with
    // amplitude ipeak. The 2 ms window covers only a fraction of a period, so
    // compare against the closed form rather than windowed peak statistics.
    const Waveform& ia = run.wave("ia");
    double worst = 0.0;
    double amplitude_seen = 0.0;
    for (std::size_t k = 0; k < ia.samples.size(); ++k) {
        const double t = ia.time_at(k);
        const double model = op.iq * std::cos(g.omega() * t) + op.id * std::sin(g.omega() * t);
        worst = std::max(worst, std::abs(ia.samples[k] - model));
        amplitude_seen = std::max(amplitude_seen, std::abs(ia.samples[k]));
    }
    if (worst > 1e-6 * op.ipeak) {
        c.fail("phase current deviates from the steady sinusoid by " + num(worst) + " A");
    }
    if (amplitude_seen > op.ipeak * (1.0 + 1e-9)) {
        c.fail("phase current exceeds the dq magnitude " + num(op.ipeak));
    }

    // Balanced set: the three phases sum to zero at every sample.
    const Waveform& ib = run.wave("ib");
    const Waveform& ic = run.wave("ic");
    double worst_sum = 0.0;
    for (std::size_t k = 0; k < ia.samples.size(); ++k) {
        worst_sum = std::max(
            worst_sum, std::abs(ia.samples[k] + ib.samples[k] + ic.samples[k]));
    }
    if (worst_sum > 1e-9 * op.ipeak) {
        c.fail("phase currents are unbalanced: worst |ia+ib+ic| = " + num(worst_sum));
    }

    // Invariants of criteria 3 and 4 at this operating point.
    const DqCurrents residual =
        dq_dynamics(DqCurrents{op.iq, op.id}, ModulationPair{op.mq, op.md}, g);
    if (std::abs(residual.iq) > 1e-9 || std::abs(residual.id) > 1e-9) {
        c.fail("snapshot point is not a fixed point");
    }
    const double lhs = g.vdc * dc_link_current(ModulationPair{op.mq, op.md},
                                               DqCurrents{op.iq, op.id});
    const double rhs =
        1.5 * g.vqg * op.iq + 1.5 * g.resistance * (op.iq * op.iq + op.id * op.id);
    if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs))) {
        c.fail("snapshot power balance residual " + num(std::abs(lhs - rhs)));
    }
    return c;
}

// ---------------------------------------------------------------------------
// 7. Runtime bounds.
// ---------------------------------------------------------------------------
Criterion criterion_runtime(std::chrono::steady_clock::time_point suite_start) {
    Criterion c;
    ConverterParams p;
    p.vs = 400.0;
    p.load = ResistiveLoad{800.0 * 800.0 / 600.0};
    SimConfig sc;
    sc.dt = 0.28e-6;
    sc.t_end = 2e-3;
    const auto t0 = std::chrono::steady_clock::now();
    const SimRun run = simulate_converter(p, DutyPair{0.5, 0.5}, sc);
    const auto t1 = std::chrono::steady_clock::now();
    const double run_seconds = std::chrono::duration<double>(t1 - t0).count();
    c.info("2 ms switched run (" + std::to_string(run.wave("vo").samples.size()) +
           " samples): " + num(run_seconds) + " s");
    if (run_seconds >= 1.0) {
        c.fail("2 ms switched run took " + num(run_seconds) + " s (bound: 1 s)");
    }
    const double suite_seconds =
        std::chrono::duration<double>(t1 - suite_start).count();
    if (suite_seconds >= 60.0) {
        c.fail("acceptance suite took " + num(suite_seconds) + " s (bound: 60 s)");
    }
    return c;
}

}  // namespace

int main() {
    const auto suite_start = std::chrono::steady_clock::now();
    struct Entry {
        const char* label;
        std::function<Criterion()> fn;
    };
    const std::vector<Entry> entries{
        {"criterion 1: operating-point table reproduction via sweep",
         [] { return criterion_table(); }},
        {"criterion 2: switched gain matches the averaged prediction",
         [] { return criterion_switched_gain(); }},
        {"criterion 3: averaged-dq convergence to the solver",
         [] { return criterion_convergence(); }},
        {"criterion 4: algebraic identities", [] { return criterion_identities(); }},
        {"criterion 5: sweep trend properties", [] { return criterion_trends(); }},
        {"criterion 6: snapshot scenario reaches a sinusoidal steady state",
         [] { return criterion_snapshot(); }},
        {"criterion 7: runtime bounds",
         [&] { return criterion_runtime(suite_start); }},
    };

    int failed = 0;
    for (const Entry& e : entries) {
        const Criterion c = e.fn();
        std::cout << (c.pass ? "PASS " : "FAIL ") << e.label << '\n';
        for (const std::string& note : c.notes) std::cout << "     - " << note << '\n';
        if (!c.pass) ++failed;
    }
    std::cout << (7 - failed) << "/7 criteria passed\n";
    return failed;
}
