#pragma once

#include <map>
#include <string>
#include <string_view>

#include "jjsim/devices/jjfet.hpp"
#include "jjsim/devices/ntron.hpp"

namespace jjsim::devices {

/// Raw contents of a device card file: scalar `param name = value` entries and
/// named `table ... end` blocks. Typed views are built by the from_card
/// functions below.
struct DeviceCard {
    std::string path;  ///< origin, used in error messages
    std::map<std::string, double> params;
    std::map<std::string, LookupTable1D> tables;

    bool has_param(const std::string& name) const { return params.count(name) > 0; }
    double param(const std::string& name) const;
    const LookupTable1D& table(const std::string& name) const;
};

/// Parses card text. Grammar: `#` starts a comment anywhere; blank lines are
/// skipped; `param <name> = <number>`; `table <name>` followed by one
/// `<x> <y>` pair per line and a closing `end`. Numbers are plain decimal or
/// scientific notation in SI units.
DeviceCard parse_card(std::string_view text, const std::string& path_for_errors);

/// Reads and parses a card file from disk.
DeviceCard load_card(const std::string& path);

/// Scalar overrides applied on top of a card, e.g. from inline `.model`
/// attributes in a netlist.
using ParamOverrides = std::map<std::string, double>;

/// Builds JJFET parameters from a card. Required: params v_t, v_crit, ic_a0,
/// ic_a1 and tables r_sg, r_n. Optional: delta_gap.
JjfetParams jjfet_from_card(const DeviceCard& card, const ParamOverrides& overrides = {});

/// Builds nTron parameters from a card. Required: param r_channel and table
/// i_sw. Optional: latching (0/1).
NtronParams ntron_from_card(const DeviceCard& card, const ParamOverrides& overrides = {});

}  // namespace jjsim::devices
