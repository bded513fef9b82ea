#include "jjsim/devices/jjfet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "jjsim/errors.hpp"

namespace jjsim::devices {

void JjfetParams::validate() const {
    if (v_crit <= 0.0) throw InvalidTableError("v_crit must be > 0");
    if (ic_a0 < 0.0 || ic_a1 < 0.0) {
        throw InvalidTableError("critical-current fit coefficients must be >= 0");
    }

    // r_n must exceed r_sg over the whole overlapping overdrive range. Both
    // curves are piecewise linear, so checking the union of breakpoints that
    // fall inside the overlap (plus its ends) covers every point in between.
    const double lo = std::max(r_sg.x_front(), r_n.x_front());
    const double hi = std::min(r_sg.x_back(), r_n.x_back());
    if (lo > hi) return;  // disjoint calibration ranges, nothing to compare

    std::set<double> grid{lo, hi};
    for (const auto& [x, y] : r_sg.points()) {
        if (x >= lo && x <= hi) grid.insert(x);
    }
    for (const auto& [x, y] : r_n.points()) {
        if (x >= lo && x <= hi) grid.insert(x);
    }
    for (double x : grid) {
        if (r_n.eval(x) <= r_sg.eval(x)) {
            throw InvalidTableError("r_n must exceed r_sg at every overlapping "
                                    "overdrive; violated at v_gt = " + std::to_string(x));
        }
    }
}

double jjfet_critical_current(double v_gt, const JjfetParams& p) {
    if (v_gt < p.v_crit) return 0.0;
    return p.ic_a0 + p.ic_a1 * v_gt;
}

double jjfet_branch_voltage(double i_d, double v_gt, DeviceState state,
                            const JjfetParams& p) {
    switch (state) {
        case DeviceState::JjfetSubGap: return i_d * p.r_sg.eval(v_gt);
        case DeviceState::JjfetNormal: return i_d * p.r_n.eval(v_gt);
        default:
            throw ContractError("jjfet_branch_voltage called with non-JJFET state");
    }
}

DeviceState jjfet_state_condition(double i_d, double v_gt, const JjfetParams& p) {
    return std::abs(i_d) < jjfet_critical_current(v_gt, p) ? DeviceState::JjfetSubGap
                                                           : DeviceState::JjfetNormal;
}

double gain_factor(double v_gt, const JjfetParams& p) {
    if (!p.delta_gap.has_value()) {
        throw Error("gain factor undefined: delta_gap not provided in the card");
    }
    const double ic = jjfet_critical_current(v_gt, p);
    if (ic <= 0.0) {
        throw Error("gain factor undefined: critical current is zero at this overdrive");
    }
    return p.ic_a1 * std::numbers::pi * *p.delta_gap / ic;
}

}  // namespace jjsim::devices
