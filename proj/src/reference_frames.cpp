#include "gridtie/reference_frames.hpp"

#include <cmath>

namespace gridtie {

QdoFrame park(const ThreePhase& f, double theta) {
    const double tb = theta - kPhaseDisplacement;
    const double tc = theta + kPhaseDisplacement;
    QdoFrame out;
    out.q = (2.0 / 3.0) * (f.a * std::cos(theta) + f.b * std::cos(tb) + f.c * std::cos(tc));
    out.d = (2.0 / 3.0) * (f.a * std::sin(theta) + f.b * std::sin(tb) + f.c * std::sin(tc));
    out.o = (f.a + f.b + f.c) / 3.0;
    return out;
}

ThreePhase inverse_park(const QdoFrame& f, double theta) {
    const double tb = theta - kPhaseDisplacement;
    const double tc = theta + kPhaseDisplacement;
    ThreePhase out;
    out.a = f.q * std::cos(theta) + f.d * std::sin(theta) + f.o;
    out.b = f.q * std::cos(tb) + f.d * std::sin(tb) + f.o;
    out.c = f.q * std::cos(tc) + f.d * std::sin(tc) + f.o;
    return out;
}

}  // namespace gridtie
