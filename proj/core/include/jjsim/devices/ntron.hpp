#pragma once

#include "jjsim/devices/device_state.hpp"
#include "jjsim/devices/lookup_table.hpp"

namespace jjsim::devices {

/// Calibration card for one nTron. The gate terminal is an ideal short to the
/// channel- node inside the device; any gate-branch impedance comes from the
/// external series resistor of the surrounding circuit.
struct NtronParams {
    double r_channel = 20e3;  ///< resistive-state channel resistance [ohm]
    LookupTable1D i_sw;       ///< channel switching current vs |gate current| [A]
    bool latching = false;    ///< opt-in latch; default memoryless threshold

    /// Checks r_channel > 0 and that i_sw never increases with gate current.
    void validate() const;
};

/// Channel switching current for gate current i_g (absolute value is used).
double ntron_switching_current(double i_g, const NtronParams& p);

/// Channel voltage: exactly zero when superconducting, ohmic when resistive.
/// Throws ContractError for a non-nTron state.
double ntron_channel_voltage(double i_ch, DeviceState state, const NtronParams& p);

/// Resistive iff |i_ch| reaches the gate-suppressed switching current. With
/// latching enabled, a resistive channel stays resistive.
DeviceState ntron_state_condition(double i_ch, double i_g, DeviceState previous,
                                  const NtronParams& p);

}  // namespace jjsim::devices
