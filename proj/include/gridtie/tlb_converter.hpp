#pragma once

#include <variant>

#include "gridtie/errors.hpp"

namespace gridtie {

// Switch configuration of the three-level bidirectional converter. S2 and S3
// are driven as the complements of S1 and S4; any other combination shorts a
// capacitor leg and is rejected.
struct SwitchState {
    bool s1 = false;
    bool s2 = true;
    bool s3 = true;
    bool s4 = false;

    static constexpr SwitchState from_outer(bool s1, bool s4) {
        return {s1, !s1, !s4, s4};
    }

    constexpr bool complementary() const { return s2 == !s1 && s3 == !s4; }
};

// The four valid configurations, keyed by (s1, s4): I=(0,0), II=(0,1),
// III=(1,0), IV=(1,1).
enum class Mode { I, II, III, IV };

Mode mode_of(const SwitchState& s);

struct ConstantCurrentLoad {
    double amps = 0.0;
};

struct ResistiveLoad {
    double ohms = 1.0;
};

using Load = std::variant<ConstantCurrentLoad, ResistiveLoad>;

// Instantaneous output current drawn by the load at link voltage vo.
double load_current(const Load& load, double vo);

struct ConverterParams {
    double inductance = 0.2e-3;  // H
    double c1 = 250e-6;          // F, upper link capacitor
    double c2 = 250e-6;          // F, lower link capacitor
    double vs = 400.0;           // V, source terminal voltage
    Load load = ResistiveLoad{1066.0};
};

struct ConverterState {
    double il = 0.0;   // A, inductor current
    double vc1 = 0.0;  // V
    double vc2 = 0.0;  // V

    double vo() const { return vc1 + vc2; }
};

// Duty ratios of the outer switches S1 and S4.
struct DutyPair {
    double d1 = 0.0;
    double d4 = 0.0;
};

// Unified switched dynamics, valid in all four modes:
//   L  dIL/dt  = Vs - s1*Vc1 - s4*Vc2
//   C1 dVc1/dt = -io + s1*IL
//   C2 dVc2/dt = -io + s4*IL
// io is the instantaneous output current from the load model.
ConverterState state_derivative(const ConverterState& x, const SwitchState& s,
                                const ConverterParams& p, double io);

// Steady-state link-to-source voltage ratio, 2/(d1+d4).
double voltage_gain(const DutyPair& d);

// Averaged output-to-inductor current ratio, (d1+d4)/2. Reciprocal of the
// voltage gain under lossless power balance.
double average_current_ratio(const DutyPair& d);

// Symmetric duty split reaching a target link voltage: d1 = d4 = vs/vo.
// The modeled (boost) direction only supports vo >= vs.
DutyPair steady_state_duties(double vs, double vo_target);

}  // namespace gridtie
