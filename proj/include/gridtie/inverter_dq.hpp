#pragma once

#include <numbers>

#include "gridtie/errors.hpp"

namespace gridtie {

// Per-phase grid interface parameters as seen from the inverter terminals.
// The synchronous frame is aligned with the grid voltage, so the d-axis
// grid voltage is identically zero and vqg is the per-phase peak.
struct GridParams {
    double resistance = 0.1;     // ohm
    double inductance = 1.0e-3;  // H
    double frequency_hz = 60.0;
    double vqg = 160.0;  // V
    double vdc = 400.0;  // V, DC-link voltage

    double omega() const { return 2.0 * std::numbers::pi * frequency_hz; }
};

struct DqCurrents {
    double iq = 0.0;  // A
    double id = 0.0;  // A
};

struct ModulationPair {
    double mq = 0.0;
    double md = 0.0;

    // sqrt(mq^2+md^2); above 1 the modulator leaves the linear range.
    double magnitude() const;
};

// Grid angle derived from a signed power factor. The magnitude sets
// theta = acos(|pf|); the sign marks lagging (positive) vs leading
// (negative) and is kept for downstream sign choices.
struct PhaseAngle {
    double theta = 0.0;  // rad, in [0, pi/2)
    bool leading = false;

    double tangent() const;
};

PhaseAngle theta_from_pf(double pf);

// Currents injecting p_target watts in total: delivered power plus the
// per-phase line loss. Iq is the positive root of
//   (3/2)*vqg*Iq + (3/2)*r*Iq^2*(1 + tan^2 theta) = p_target
// and Id = -Iq*tan(theta) for lagging, +Iq*tan(theta) for leading.
DqCurrents grid_currents(double p_target, const GridParams& g, const PhaseAngle& angle);

// Steady-state modulation indices holding the currents i:
//   Mq = (2/Vdc) * (r*Iq + wL*Id + Vqg)
//   Md = (2/Vdc) * (r*Id - wL*Iq)
ModulationPair modulation_indices(const DqCurrents& i, const GridParams& g);

// Synchronous-frame current dynamics, returned as d/dt of (iq, id):
//   L dIq/dt = (Vdc/2)*Mq - r*Iq - wL*Id - Vqg
//   L dId/dt = (Vdc/2)*Md - r*Id + wL*Iq
DqCurrents dq_dynamics(const DqCurrents& i, const ModulationPair& m, const GridParams& g);

struct AcPower {
    double active = 0.0;    // W
    double reactive = 0.0;  // var
};

// P = (3/2)*Vqg*Iq, Q = -(3/2)*Vqg*Id.
AcPower powers(const DqCurrents& i, const GridParams& g);

// Q = P * tan(theta).
double reactive_from_active(double p, double theta);

// Averaged DC-side inverter input current, Io = (3/4)*(Mq*Iq + Md*Id).
double dc_link_current(const ModulationPair& m, const DqCurrents& i);

}  // namespace gridtie
