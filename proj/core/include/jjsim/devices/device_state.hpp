#pragma once

#include <string_view>

namespace jjsim::devices {

/// Discrete conduction state of a two-level device. JJFET instances only ever
/// hold a Jjfet* value, nTrons an Ntron* value.
enum class DeviceState {
    JjfetSubGap,
    JjfetNormal,
    NtronSuperconducting,
    NtronResistive,
};

constexpr bool is_jjfet_state(DeviceState s) {
    return s == DeviceState::JjfetSubGap || s == DeviceState::JjfetNormal;
}

constexpr bool is_ntron_state(DeviceState s) {
    return s == DeviceState::NtronSuperconducting || s == DeviceState::NtronResistive;
}

constexpr std::string_view to_string(DeviceState s) {
    switch (s) {
        case DeviceState::JjfetSubGap: return "sub_gap";
        case DeviceState::JjfetNormal: return "normal";
        case DeviceState::NtronSuperconducting: return "superconducting";
        case DeviceState::NtronResistive: return "resistive";
    }
    return "?";
}

}  // namespace jjsim::devices
