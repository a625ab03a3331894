#include "gridtie/tlb_converter.hpp"

#include <cmath>

namespace gridtie {

Mode mode_of(const SwitchState& s) {
    if (!s.complementary()) {
        throw Error(Errc::invalid_switch_state,
                    "invalid switch state: s2/s3 must complement s1/s4");
    }
    if (!s.s1 && !s.s4) return Mode::I;
    if (!s.s1 && s.s4) return Mode::II;
    if (s.s1 && !s.s4) return Mode::III;
    return Mode::IV;
}

double load_current(const Load& load, double vo) {
    if (const auto* cc = std::get_if<ConstantCurrentLoad>(&load)) {
        return cc->amps;
    }
    return vo / std::get<ResistiveLoad>(load).ohms;
}

ConverterState state_derivative(const ConverterState& x, const SwitchState& s,
                                const ConverterParams& p, double io) {
    ConverterState d;
    d.il = (p.vs - (s.s1 ? x.vc1 : 0.0) - (s.s4 ? x.vc2 : 0.0)) / p.inductance;
    d.vc1 = (-io + (s.s1 ? x.il : 0.0)) / p.c1;
    d.vc2 = (-io + (s.s4 ? x.il : 0.0)) / p.c2;
    return d;
}

double voltage_gain(const DutyPair& d) {
    const double sum = d.d1 + d.d4;
    if (sum == 0.0) {
        throw Error(Errc::degenerate_duty, "voltage gain undefined for d1 + d4 = 0");
    }
    return 2.0 / sum;
}

double average_current_ratio(const DutyPair& d) { return (d.d1 + d.d4) / 2.0; }

DutyPair steady_state_duties(double vs, double vo_target) {
    if (!(vs > 0.0) || !std::isfinite(vo_target)) {
        throw Error(Errc::bad_argument, "steady_state_duties needs vs > 0 and a finite target");
    }
    if (vo_target < vs) {
        throw Error(Errc::infeasible_gain,
                    "target link voltage below the source voltage is unreachable in boost operation");
    }
    const double d = vs / vo_target;
    return {d, d};
}

}  // namespace gridtie
