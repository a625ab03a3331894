#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gridtie/inverter_dq.hpp"

namespace gridtie {

struct OperatingPoint {
    double pf = 1.0;         // signed; negative means leading
    double p_target = 600.0; // W
};

// One operating point of the grid-tied inverter. pg_dc is the DC-side power
// Vdc*Io; pg_ac is the delivered power (3/2)*Vqg*Iq. Both are emitted so the
// line-loss gap between them stays auditable.
struct SteadyStateRow {
    double pf = 0.0;
    double mq = 0.0;
    double md = 0.0;
    double iq = 0.0;
    double id = 0.0;
    double ipeak = 0.0;  // per-phase peak, sqrt(iq^2+id^2)
    double pg_dc = 0.0;
    double pg_ac = 0.0;
};

SteadyStateRow solve_point(const OperatingPoint& op, const GridParams& g);

// Sweep entry: either a solved row or the error that rejected the point.
struct SweepEntry {
    double pf = 0.0;
    std::optional<SteadyStateRow> row;
    std::string error;
};

// One entry per requested power factor, order preserved. A failing point is
// reported in its entry; the sweep continues.
std::vector<SweepEntry> pf_sweep(std::span<const double> pfs, double p_target,
                                 const GridParams& g);

using Series = std::vector<std::pair<double, double>>;

struct TrendSeries {
    Series mq_vs_md;
    Series ipeak_vs_pf;
    Series pg_vs_pf;  // DC-side power column
    double r_squared_mq_md = 0.0;
    bool degenerate_fit = false;
};

// Plot-ready series plus the least-squares R^2 of the mq-md relation.
// Requires at least two rows; a zero-variance fit is flagged degenerate.
TrendSeries trend_series(std::span<const SteadyStateRow> rows);

}  // namespace gridtie
