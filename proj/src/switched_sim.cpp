#include "gridtie/switched_sim.hpp"

#include <cmath>
#include <cstddef>

#include "gridtie/reference_frames.hpp"

namespace gridtie {

namespace {

constexpr double kBlowupLimit = 1e9;

// Unit tent wave over one carrier period: 0 at the edges, 1 at midperiod.
double triangle(double cycles) {
    const double x = cycles - std::floor(cycles);
    return 1.0 - std::abs(2.0 * x - 1.0);
}

bool comparator(double duty, double carrier) {
    if (duty >= 1.0) return true;  // pinned at the rails
    if (duty <= 0.0) return false;
    return duty > carrier;
}

void validate_common(const SimConfig& c) {
    if (!(c.dt > 0.0) || !(c.t_end >= c.dt)) {
        throw Error(Errc::bad_argument, "simulation needs dt > 0 and t_end >= dt");
    }
    if (c.record_decimation < 1) {
        throw Error(Errc::bad_argument, "record_decimation must be >= 1");
    }
}

struct Recorder {
    std::vector<Waveform> waves;
    int decimation;

    Recorder(std::vector<std::string> names, double dt, int decim) : decimation(decim) {
        for (auto& n : names) {
            Waveform w;
            w.name = std::move(n);
            w.t0 = 0.0;
            w.dt_sample = dt * decim;
            waves.push_back(std::move(w));
        }
    }

    void push(long step, std::initializer_list<double> values) {
        if (step % decimation != 0) return;
        std::size_t k = 0;
        for (double v : values) waves[k++].samples.push_back(v);
    }
};

std::map<std::string, SteadyMetrics> trailing_metrics(const std::vector<Waveform>& waves) {
    std::map<std::string, SteadyMetrics> out;
    for (const auto& w : waves) {
        try {
            out[w.name] = steady_metrics(w, 0.1);
        } catch (const Error&) {
            // run too short to window; leave the entry out
        }
    }
    return out;
}

}  // namespace

SwitchState tlb_pwm(const DutyPair& d, double t, double f_sw) {
    const double cycles = t * f_sw;
    const bool s1 = comparator(d.d1, triangle(cycles));
    const bool s4 = comparator(d.d4, triangle(cycles + 0.5));
    return SwitchState::from_outer(s1, s4);
}

SteadyMetrics steady_metrics(const Waveform& w, double window_fraction) {
    if (!(window_fraction > 0.0) || window_fraction > 1.0) {
        throw Error(Errc::bad_argument, "window fraction must be in (0, 1]");
    }
    const std::size_t n = w.samples.size();
    const auto count = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(n)));
    if (count < 10) {
        throw Error(Errc::window_too_short, "steady-state window has fewer than 10 samples");
    }
    const std::size_t begin = n - count;

    SteadyMetrics m;
    double lo = w.samples[begin], hi = w.samples[begin], sum = 0.0;
    for (std::size_t k = begin; k < n; ++k) {
        const double v = w.samples[k];
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    m.mean = sum / static_cast<double>(count);
    m.ripple_pp = hi - lo;

    const double band = 0.02 * std::abs(m.mean);
    std::size_t settled_from = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(w.samples[k] - m.mean) > band) settled_from = k + 1;
    }
    m.settle_time = w.time_at(std::min(settled_from, n - 1));
    return m;
}

const Waveform& SimRun::wave(const std::string& name) const {
    for (const auto& w : waves) {
        if (w.name == name) return w;
    }
    throw Error(Errc::bad_argument, "no waveform named " + name);
}

SimRun simulate_converter(const ConverterParams& p, const DutyPair& d, const SimConfig& c,
                          std::optional<ConverterState> initial) {
    validate_common(c);
    if (!(c.f_sw > 0.0) || c.dt > 1.0 / (50.0 * c.f_sw)) {
        throw Error(Errc::bad_argument,
                    "switched run needs dt <= 1/(50*f_sw) to resolve the carriers");
    }
    if (!(p.inductance > 0.0) || !(p.c1 > 0.0) || !(p.c2 > 0.0) || !(p.vs > 0.0)) {
        throw Error(Errc::bad_argument, "converter parameters must be positive");
    }
    if (!(d.d1 >= 0.0) || d.d1 > 1.0 || !(d.d4 >= 0.0) || d.d4 > 1.0) {
        throw Error(Errc::bad_argument, "duty ratios must lie in [0, 1]");
    }

    ConverterState x;
    if (initial) {
        x = *initial;
    } else if (d.d1 + d.d4 > 0.0) {
        // symmetric equilibrium start: balanced capacitors, inductor carrying
        // the reflected load current
        const double gain = voltage_gain(d);
        const double vo = p.vs * gain;
        const double io = load_current(p.load, vo);
        x = {io * gain, vo / 2.0, vo / 2.0};
    }

    const long steps = std::lround(c.t_end / c.dt);
    Recorder rec({"iL", "vc1", "vc2", "vo"}, c.dt, c.record_decimation);
    rec.push(0, {x.il, x.vc1, x.vc2, x.vo()});

    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * c.dt;
        const SwitchState s = tlb_pwm(d, t, c.f_sw);  // held over the step
        const auto f = [&](const ConverterState& y) {
            return state_derivative(y, s, p, load_current(p.load, y.vo()));
        };
        if (c.integrator == IntegratorKind::euler) {
            const ConverterState k1 = f(x);
            x.il += c.dt * k1.il;
            x.vc1 += c.dt * k1.vc1;
            x.vc2 += c.dt * k1.vc2;
        } else {
            const double h = c.dt;
            const ConverterState k1 = f(x);
            const ConverterState k2 = f({x.il + 0.5 * h * k1.il, x.vc1 + 0.5 * h * k1.vc1,
                                         x.vc2 + 0.5 * h * k1.vc2});
            const ConverterState k3 = f({x.il + 0.5 * h * k2.il, x.vc1 + 0.5 * h * k2.vc1,
                                         x.vc2 + 0.5 * h * k2.vc2});
            const ConverterState k4 =
                f({x.il + h * k3.il, x.vc1 + h * k3.vc1, x.vc2 + h * k3.vc2});
            x.il += h / 6.0 * (k1.il + 2.0 * k2.il + 2.0 * k3.il + k4.il);
            x.vc1 += h / 6.0 * (k1.vc1 + 2.0 * k2.vc1 + 2.0 * k3.vc1 + k4.vc1);
            x.vc2 += h / 6.0 * (k1.vc2 + 2.0 * k2.vc2 + 2.0 * k3.vc2 + k4.vc2);
        }
        if (std::abs(x.il) > kBlowupLimit || std::abs(x.vc1) > kBlowupLimit ||
            std::abs(x.vc2) > kBlowupLimit || !std::isfinite(x.il) || !std::isfinite(x.vc1) ||
            !std::isfinite(x.vc2)) {
            throw Error(Errc::numeric_blowup,
                        "converter state exceeded 1e9 at t = " + std::to_string(t + c.dt) +
                            " s; reduce dt or check parameters");
        }
        rec.push(k + 1, {x.il, x.vc1, x.vc2, x.vo()});
    }

    SimRun run;
    run.waves = std::move(rec.waves);
    run.metrics = trailing_metrics(run.waves);
    return run;
}

SimRun simulate_inverter_dq(const GridParams& g, const ModulationPair& m, const DqCurrents& i0,
                            const SimConfig& c) {
    validate_common(c);
    if (!(g.inductance > 0.0) || !(g.resistance >= 0.0) || !(g.frequency_hz > 0.0)) {
        throw Error(Errc::bad_argument, "grid parameters out of range");
    }

    const double omega = g.omega();
    DqCurrents x = i0;

    const long steps = std::lround(c.t_end / c.dt);
    Recorder rec({"iq", "id", "P", "Q", "ia", "ib", "ic"}, c.dt, c.record_decimation);
    std::optional<double> steady_time;

    const auto record = [&](long step, double t) {
        const AcPower pq = powers(x, g);
        const ThreePhase abc = inverse_park({x.iq, x.id, 0.0}, omega * t);
        rec.push(step, {x.iq, x.id, pq.active, pq.reactive, abc.a, abc.b, abc.c});
    };
    record(0, 0.0);

    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * c.dt;
        const auto f = [&](const DqCurrents& y) { return dq_dynamics(y, m, g); };
        const DqCurrents k1 = f(x);
        if (!steady_time && std::abs(k1.iq) < 1e-3 && std::abs(k1.id) < 1e-3) {
            steady_time = t;
        }
        if (c.integrator == IntegratorKind::euler) {
            x.iq += c.dt * k1.iq;
            x.id += c.dt * k1.id;
        } else {
            const double h = c.dt;
            const DqCurrents k2 = f({x.iq + 0.5 * h * k1.iq, x.id + 0.5 * h * k1.id});
            const DqCurrents k3 = f({x.iq + 0.5 * h * k2.iq, x.id + 0.5 * h * k2.id});
            const DqCurrents k4 = f({x.iq + h * k3.iq, x.id + h * k3.id});
            x.iq += h / 6.0 * (k1.iq + 2.0 * k2.iq + 2.0 * k3.iq + k4.iq);
            x.id += h / 6.0 * (k1.id + 2.0 * k2.id + 2.0 * k3.id + k4.id);
        }
        if (std::abs(x.iq) > kBlowupLimit || std::abs(x.id) > kBlowupLimit ||
            !std::isfinite(x.iq) || !std::isfinite(x.id)) {
            throw Error(Errc::numeric_blowup,
                        "inverter currents exceeded 1e9 at t = " + std::to_string(t + c.dt) +
                            " s; reduce dt or check parameters");
        }
        record(k + 1, t + c.dt);
    }

    SimRun run;
    run.waves = std::move(rec.waves);
    run.metrics = trailing_metrics(run.waves);
    run.steady_time = steady_time;
    return run;
}

}  // namespace gridtie
