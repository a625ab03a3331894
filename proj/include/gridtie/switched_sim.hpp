#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridtie/inverter_dq.hpp"
#include "gridtie/tlb_converter.hpp"

namespace gridtie {

enum class IntegratorKind { euler, rk4 };

struct SimConfig {
    double dt = 0.0;     // s, fixed step
    double t_end = 0.0;  // s
    double f_sw = 18e3;  // Hz, converter switching frequency
    IntegratorKind integrator = IntegratorKind::rk4;
    int record_decimation = 1;  // keep every n-th step
};

// Uniformly sampled named time series.
struct Waveform {
    std::string name;
    double t0 = 0.0;
    double dt_sample = 0.0;
    std::vector<double> samples;

    double time_at(std::size_t k) const { return t0 + dt_sample * static_cast<double>(k); }
};

struct SteadyMetrics {
    double mean = 0.0;
    double ripple_pp = 0.0;   // max - min over the window
    double settle_time = 0.0; // first time the signal stays within +/-2% of the window mean
};

// Statistics over the trailing window_fraction of the record. Needs at least
// ten samples in the window.
SteadyMetrics steady_metrics(const Waveform& w, double window_fraction);

// Carrier comparison for the two outer switches: two triangular carriers in
// [0,1], interleaved by half a switching period; s = (duty > carrier), ties
// resolve to OFF, duties at or beyond the rails pin the switch.
SwitchState tlb_pwm(const DutyPair& d, double t, double f_sw);

struct SimRun {
    std::vector<Waveform> waves;
    // Trailing-10% statistics per signal; omitted when the run is too short
    // to window.
    std::map<std::string, SteadyMetrics> metrics;
    // First time both current derivatives drop below 1e-3 A/s (inverter runs).
    std::optional<double> steady_time;

    const Waveform& wave(const std::string& name) const;
};

// Fixed-step integration of the switched converter under PWM. Records iL,
// vc1, vc2, vo. Requires dt <= 1/(50*f_sw) so every switching period is
// sampled densely; switch state is sampled at the step start and held.
// Default initial state is the symmetric equilibrium for the given duties.
SimRun simulate_converter(const ConverterParams& p, const DutyPair& d, const SimConfig& c,
                          std::optional<ConverterState> initial = std::nullopt);

// Fixed-step integration of the averaged dq inverter model under constant
// modulation. Records iq, id, P, Q and the reconstructed phase currents
// ia, ib, ic at theta = omega*t.
SimRun simulate_inverter_dq(const GridParams& g, const ModulationPair& m,
                            const DqCurrents& i0, const SimConfig& c);

}  // namespace gridtie
