#include "gridtie/steady_state.hpp"

#include <cmath>
#include <limits>

namespace gridtie {

SteadyStateRow solve_point(const OperatingPoint& op, const GridParams& g) {
    const PhaseAngle angle = theta_from_pf(op.pf);
    const DqCurrents i = grid_currents(op.p_target, g, angle);
    const ModulationPair m = modulation_indices(i, g);
    const double io = dc_link_current(m, i);

    SteadyStateRow row;
    row.pf = op.pf;
    row.mq = m.mq;
    row.md = m.md;
    row.iq = i.iq;
    row.id = i.id;
    row.ipeak = std::hypot(i.iq, i.id);
    row.pg_dc = g.vdc * io;
    row.pg_ac = powers(i, g).active;

    for (double v : {row.mq, row.md, row.iq, row.id, row.ipeak, row.pg_dc, row.pg_ac}) {
        if (!std::isfinite(v)) {
            throw Error(Errc::no_real_root, "operating point has no finite solution");
        }
    }
    return row;
}

std::vector<SweepEntry> pf_sweep(std::span<const double> pfs, double p_target,
                                 const GridParams& g) {
    std::vector<SweepEntry> out;
    out.reserve(pfs.size());
    for (double pf : pfs) {
        SweepEntry entry;
        entry.pf = pf;
        try {
            entry.row = solve_point({pf, p_target}, g);
        } catch (const Error& e) {
            entry.error = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

TrendSeries trend_series(std::span<const SteadyStateRow> rows) {
    if (rows.size() < 2) {
        throw Error(Errc::insufficient_points, "trend series needs at least two rows");
    }
    TrendSeries t;
    t.mq_vs_md.reserve(rows.size());
    for (const auto& r : rows) {
        t.mq_vs_md.emplace_back(r.mq, r.md);
        t.ipeak_vs_pf.emplace_back(r.pf, r.ipeak);
        t.pg_vs_pf.emplace_back(r.pf, r.pg_dc);
    }

    const double n = static_cast<double>(rows.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : t.mq_vs_md) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& [x, y] : t.mq_vs_md) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        t.degenerate_fit = true;
        t.r_squared_mq_md = std::numeric_limits<double>::quiet_NaN();
    } else {
        t.r_squared_mq_md = (sxy * sxy) / (sxx * syy);
    }
    return t;
}

}  // namespace gridtie
