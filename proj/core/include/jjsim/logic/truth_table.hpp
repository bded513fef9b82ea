#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "jjsim/logic/gates.hpp"
#include "jjsim/logic/levels.hpp"
#include "jjsim/netlist/circuit.hpp"

namespace jjsim::logic {

using BoolFunction = std::function<bool(const std::vector<bool>&)>;

struct TruthTableRow {
    std::vector<bool> inputs;
    std::vector<double> input_voltages;
    double output_voltage = 0.0;
    LogicValue level = LogicValue::X;
    bool expected = false;
    bool pass = false;
    bool converged = false;
    /// Distance past the classification threshold the output must clear;
    /// negative when the row fails.
    double noise_margin = 0.0;

    std::string bits() const;  ///< e.g. "01", first input first
};

struct TruthTableReport {
    std::string gate;  ///< label for reporting
    std::vector<std::string> input_nodes;
    std::string output_node;
    std::vector<TruthTableRow> rows;
    bool overall_pass = false;
    double worst_noise_margin = 0.0;
};

/// Exhaustively drives the circuit's inputs with DC sources at v_low/v_high
/// for all 2^n combinations (first input varies slowest), solves each
/// operating point, classifies the output and compares with `expected`.
/// Every input node must be driven by a voltage source whose positive
/// terminal is that node. `pinned` holds extra input nodes fixed at a logic
/// value without enumerating them. Non-convergent rows fail the report.
TruthTableReport truth_table(const netlist::Circuit& circuit,
                             const std::vector<std::string>& input_nodes,
                             const std::string& output_node, const LogicLevels& levels,
                             const BoolFunction& expected,
                             const std::string& gate_label = "",
                             const std::map<std::string, bool>& pinned = {});

/// Expected 2-input function of a majority gate with one input pinned:
/// OR when the pinned value is 1, AND when it is 0.
BoolFunction maj3_reconfigure(int fixed_input, bool fixed_value);

std::string truth_table_to_json(const TruthTableReport& report,
                                const std::string& banner = "");

}  // namespace jjsim::logic
