#include "gridtie/inverter_dq.hpp"

#include <cmath>

namespace gridtie {

double ModulationPair::magnitude() const { return std::hypot(mq, md); }

double PhaseAngle::tangent() const { return std::tan(theta); }

PhaseAngle theta_from_pf(double pf) {
    const double mag = std::abs(pf);
    if (!(mag > 0.0) || mag > 1.0 || !std::isfinite(pf)) {
        throw Error(Errc::invalid_power_factor, "power factor out of range");
    }
    return {std::acos(mag), pf < 0.0};
}

DqCurrents grid_currents(double p_target, const GridParams& g, const PhaseAngle& angle) {
    if (!(p_target > 0.0)) {
        throw Error(Errc::bad_argument, "target power must be positive");
    }
    const double tan_th = angle.tangent();
    const double a = 1.5 * g.resistance * (1.0 + tan_th * tan_th);
    const double b = 1.5 * g.vqg;
    double iq;
    if (a == 0.0) {
        iq = p_target / b;
    } else {
        const double disc = b * b + 4.0 * a * p_target;
        if (!(disc >= 0.0)) {
            throw Error(Errc::no_real_root, "target power exceeds the transferable maximum");
        }
        iq = (-b + std::sqrt(disc)) / (2.0 * a);
    }
    const double id = (angle.leading ? iq : -iq) * tan_th;
    if (!std::isfinite(iq) || !std::isfinite(id)) {
        throw Error(Errc::no_real_root, "operating point has no finite solution");
    }
    return {iq, id};
}

ModulationPair modulation_indices(const DqCurrents& i, const GridParams& g) {
    const double wl = g.omega() * g.inductance;
    ModulationPair m;
    m.mq = (2.0 / g.vdc) * (g.resistance * i.iq + wl * i.id + g.vqg);
    m.md = (2.0 / g.vdc) * (g.resistance * i.id - wl * i.iq);
    return m;
}

DqCurrents dq_dynamics(const DqCurrents& i, const ModulationPair& m, const GridParams& g) {
    const double wl = g.omega() * g.inductance;
    DqCurrents didt;
    didt.iq = (0.5 * g.vdc * m.mq - g.resistance * i.iq - wl * i.id - g.vqg) / g.inductance;
    didt.id = (0.5 * g.vdc * m.md - g.resistance * i.id + wl * i.iq) / g.inductance;
    return didt;
}

AcPower powers(const DqCurrents& i, const GridParams& g) {
    return {1.5 * g.vqg * i.iq, -1.5 * g.vqg * i.id};
}

double reactive_from_active(double p, double theta) { return p * std::tan(theta); }

double dc_link_current(const ModulationPair& m, const DqCurrents& i) {
    return 0.75 * (m.mq * i.iq + m.md * i.id);
}

}  // namespace gridtie
