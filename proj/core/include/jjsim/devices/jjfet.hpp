#pragma once

#include <optional>

#include "jjsim/devices/device_state.hpp"
#include "jjsim/devices/lookup_table.hpp"

namespace jjsim::devices {

/// Calibration card for one JJFET. Immutable after construction and safe to
/// share between concurrent evaluations.
///
/// The critical current follows a piecewise-linear fit with a sharp onset at
/// v_crit of gate overdrive; the two channel resistances are table-driven
/// functions of the overdrive v_gt = v_gate - v_t.
struct JjfetParams {
    double v_t = -0.7;        ///< channel threshold voltage [V]
    double v_crit = 0.24;     ///< overdrive at which supercurrent switches on [V]
    double ic_a0 = 2.886e-7;  ///< critical-current fit offset [A]
    double ic_a1 = 3.21e-7;   ///< critical-current fit slope [A/V]
    LookupTable1D r_sg;       ///< sub-gap channel resistance vs v_gt [ohm]
    LookupTable1D r_n;        ///< normal channel resistance vs v_gt [ohm]
    std::optional<double> delta_gap;  ///< superconducting gap [eV], diagnostics only

    /// Checks v_crit > 0, non-negative fit coefficients, and that r_n stays
    /// strictly above r_sg wherever the two tables overlap. Throws
    /// InvalidTableError on violation.
    void validate() const;
};

/// Critical current at gate overdrive v_gt. Zero below v_crit; the onset
/// boundary itself counts as conducting (right-continuous step).
double jjfet_critical_current(double v_gt, const JjfetParams& p);

/// Drain-source voltage for drain current i_d in the given discrete state.
/// Odd in i_d; throws ContractError for a non-JJFET state.
double jjfet_branch_voltage(double i_d, double v_gt, DeviceState state,
                            const JjfetParams& p);

/// Sub-gap iff |i_d| is strictly below the critical current, normal otherwise.
DeviceState jjfet_state_condition(double i_d, double v_gt, const JjfetParams& p);

/// Supercurrent transconductance diagnostic: ic_a1 * pi * delta_gap / I_C.
/// Throws Error when I_C is zero at this overdrive or delta_gap is absent.
double gain_factor(double v_gt, const JjfetParams& p);

}  // namespace jjsim::devices
