#pragma once

#include <numbers>

namespace gridtie {

// Instantaneous three-phase quantities (volts or amperes, caller's choice).
struct ThreePhase {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

// Rotating-frame image of a three-phase quantity. For a balanced input the
// zero-sequence component o vanishes.
struct QdoFrame {
    double q = 0.0;
    double d = 0.0;
    double o = 0.0;
};

// Phase displacement of a balanced three-phase set.
inline constexpr double kPhaseDisplacement = 2.0 * std::numbers::pi / 3.0;

// abc -> qdo at rotor angle theta. Amplitude-invariant scaling: 2/3 on the
// q and d rows, 1/3 on the zero row. The q row carries the cosines, so a
// cosine-aligned balanced set of amplitude A maps to (q, d) = (A, 0).
QdoFrame park(const ThreePhase& f, double theta);

// qdo -> abc; exact inverse of park at the same angle.
ThreePhase inverse_park(const QdoFrame& f, double theta);

}  // namespace gridtie
