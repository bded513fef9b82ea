#include "jjsim/devices/ntron.hpp"

#include <cmath>

#include "jjsim/errors.hpp"

namespace jjsim::devices {

void NtronParams::validate() const {
    if (r_channel <= 0.0) throw InvalidTableError("r_channel must be > 0");
    if (!i_sw.is_non_increasing()) {
        throw InvalidTableError("i_sw must be monotone non-increasing in gate current");
    }
}

double ntron_switching_current(double i_g, const NtronParams& p) {
    return p.i_sw.eval(std::abs(i_g));
}

double ntron_channel_voltage(double i_ch, DeviceState state, const NtronParams& p) {
    switch (state) {
        case DeviceState::NtronSuperconducting: return 0.0;
        case DeviceState::NtronResistive: return i_ch * p.r_channel;
        default:
            throw ContractError("ntron_channel_voltage called with non-nTron state");
    }
}

DeviceState ntron_state_condition(double i_ch, double i_g, DeviceState previous,
                                  const NtronParams& p) {
    if (!is_ntron_state(previous)) {
        throw ContractError("ntron_state_condition called with non-nTron previous state");
    }
    if (p.latching && previous == DeviceState::NtronResistive) {
        return DeviceState::NtronResistive;
    }
    return std::abs(i_ch) >= ntron_switching_current(i_g, p)
               ? DeviceState::NtronResistive
               : DeviceState::NtronSuperconducting;
}

}  // namespace jjsim::devices
