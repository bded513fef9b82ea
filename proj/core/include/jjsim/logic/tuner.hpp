#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jjsim/devices/jjfet.hpp"
#include "jjsim/devices/ntron.hpp"
#include "jjsim/logic/gates.hpp"
#include "jjsim/logic/levels.hpp"

namespace jjsim::logic {

/// Grid specification for the bias search. r_s, r_p and i_bias1 are swept on
/// logarithmic grids; i_bias2 defaults to the value that makes the nTron
/// output swing exactly v_high - v_low for the card in use (35 uA on the
/// default 20 kOhm card), and v_bias sits at the logic-low rail.
struct TuneSettings {
    double margin = 0.5e-6;  ///< required gate-current clearance [A]
    int points_per_axis = 25;
    double r_s_min = 100.0;
    double r_s_max = 1e6;
    double r_p_min = 100.0;
    double r_p_max = 1e6;
    double i_bias1_min = 1e-6;
    double i_bias1_max = 100e-6;
    std::optional<double> i_bias2;  ///< override channel bias [A]
};

struct StageTuneResult {
    GateKind stage = GateKind::Not;
    bool feasible = false;
    GateBias bias;  ///< best point found, feasible or not
    double worst_margin = 0.0;
    /// per input combination ("01" keyed, first input first) the signed
    /// clearance of the solved gate current from the switching threshold
    std::vector<std::pair<std::string, double>> combination_margins;
};

struct TuneResult {
    GateKind kind = GateKind::Not;
    bool feasible = false;
    double requested_margin = 0.0;
    /// gate current at which the channel switching current falls to the
    /// channel bias; absent when the bias can never switch the channel
    std::optional<double> threshold_gate_current;
    std::vector<StageTuneResult> stages;
    BiasLibrary biases;  ///< best bias per stage, ready for build_gate
};

/// Gate current that suppresses the channel switching current down to
/// i_bias2: the smallest |i_g| with i_sw(i_g) <= i_bias2. Zero when the
/// channel switches even without gate drive; nullopt when it never switches.
std::optional<double> switching_threshold(const devices::NtronParams& ntron,
                                          double i_bias2);

/// Exhaustive grid search for each tuned stage of `kind`: a point is feasible
/// when for every input combination the solved nTron gate current clears the
/// switching threshold by >= margin on the required side. Returns the point
/// maximizing the worst-case clearance; deterministic for a fixed grid.
TuneResult tune_gate(GateKind kind, const devices::JjfetParams& jjfet,
                     const devices::NtronParams& ntron, const GateModels& models,
                     const TuneSettings& settings = {}, const LogicLevels& levels = {});

std::string tune_result_to_json(const TuneResult& result, const std::string& banner = "");

}  // namespace jjsim::logic
