#include "jjsim/logic/truth_table.hpp"

#include <algorithm>
#include <limits>

#include <json.hpp>

#include "jjsim/errors.hpp"
#include "jjsim/solver/dc.hpp"

namespace jjsim::logic {

using netlist::Circuit;
using netlist::ElementKind;

std::string TruthTableRow::bits() const {
    std::string s;
    for (bool b : inputs) s += b ? '1' : '0';
    return s;
}

namespace {

/// Index of the voltage source driving `node` (positive terminal on it).
std::size_t driving_source(const Circuit& circuit, const std::string& node) {
    const int node_idx = circuit.node_index(node);
    if (node_idx < 0) throw Error("input node '" + node + "' does not exist");
    for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
        const auto& el = circuit.elements[i];
        if (el.kind == ElementKind::VoltageSource && el.nodes[0] == node_idx) {
            return i;
        }
    }
    throw Error("input node '" + node + "' is not driven by a voltage source");
}

}  // namespace

TruthTableReport truth_table(const Circuit& circuit,
                             const std::vector<std::string>& input_nodes,
                             const std::string& output_node, const LogicLevels& levels,
                             const BoolFunction& expected,
                             const std::string& gate_label,
                             const std::map<std::string, bool>& pinned) {
    levels.validate();

    TruthTableReport report;
    report.gate = gate_label;
    report.input_nodes = input_nodes;
    report.output_node = output_node;

    const int out_idx = circuit.node_index(output_node);
    if (out_idx < 0) throw Error("output node '" + output_node + "' does not exist");

    Circuit working = circuit;
    std::vector<std::size_t> sources;
    sources.reserve(input_nodes.size());
    for (const auto& node : input_nodes) {
        sources.push_back(driving_source(circuit, node));
    }
    for (const auto& [node, value] : pinned) {
        const std::size_t src = driving_source(circuit, node);
        working.elements[src].waveform =
            netlist::SourceWaveform::dc(value ? levels.v_high : levels.v_low);
    }

    const std::size_t n = input_nodes.size();
    const std::size_t row_count = std::size_t{1} << n;
    report.worst_noise_margin = std::numeric_limits<double>::infinity();
    report.overall_pass = true;

    for (std::size_t code = 0; code < row_count; ++code) {
        TruthTableRow row;
        for (std::size_t k = 0; k < n; ++k) {
            // first listed input is the most significant bit
            const bool bit = (code >> (n - 1 - k)) & 1u;
            row.inputs.push_back(bit);
            const double v = bit ? levels.v_high : levels.v_low;
            row.input_voltages.push_back(v);
            working.elements[sources[k]].waveform = netlist::SourceWaveform::dc(v);
        }

        const solver::Solution sol = solver::solve_dc(working);
        row.converged = sol.converged;
        row.output_voltage = sol.node_voltages[static_cast<std::size_t>(out_idx)];
        row.level = classify_level(row.output_voltage, levels);
        row.expected = expected(row.inputs);
        row.pass = row.converged && row.level != LogicValue::X &&
                   (row.level == LogicValue::One) == row.expected;
        row.noise_margin = row.expected ? row.output_voltage - levels.high_min
                                        : levels.low_max - row.output_voltage;

        report.worst_noise_margin = std::min(report.worst_noise_margin, row.noise_margin);
        report.overall_pass = report.overall_pass && row.pass;
        report.rows.push_back(std::move(row));
    }
    return report;
}

BoolFunction maj3_reconfigure(int fixed_input, bool fixed_value) {
    if (fixed_input < 0 || fixed_input > 2) {
        throw ContractError("fixed_input must be one of 0, 1, 2");
    }
    // MAJ3(a, b, 1) = a or b; MAJ3(a, b, 0) = a and b. Majority is symmetric,
    // so the pinned position does not matter.
    return [fixed_value](const std::vector<bool>& in) {
        return fixed_value ? (in.at(0) || in.at(1)) : (in.at(0) && in.at(1));
    };
}

std::string truth_table_to_json(const TruthTableReport& report,
                                const std::string& banner) {
    nlohmann::ordered_json j;
    if (!banner.empty()) j["tool"] = banner;
    j["gate"] = report.gate;
    j["inputs"] = report.input_nodes;
    j["output"] = report.output_node;

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        r["bits"] = row.bits();
        r["input_v"] = row.input_voltages;
        r["output_v"] = row.output_voltage;
        r["level"] = std::string(1, to_char(row.level));
        r["expected"] = row.expected ? 1 : 0;
        r["pass"] = row.pass;
        r["converged"] = row.converged;
        r["noise_margin_v"] = row.noise_margin;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["overall_pass"] = report.overall_pass;
    j["worst_noise_margin_v"] = report.worst_noise_margin;
    return j.dump(2) + "\n";
}

}  // namespace jjsim::logic
