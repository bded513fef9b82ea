#include "jjsim/solver/report.hpp"

#include <json.hpp>

namespace jjsim::solver {

using netlist::ElementKind;
using ordered_json = nlohmann::ordered_json;

std::string solution_to_json(const netlist::Circuit& circuit, const Solution& solution,
                             const std::string& banner) {
    ordered_json j;
    if (!banner.empty()) j["tool"] = banner;
    j["converged"] = solution.converged;
    j["iterations"] = solution.iterations;
    j["max_kcl_residual_a"] = solution.max_kcl_residual;

    ordered_json voltages = ordered_json::object();
    for (int n = 1; n < circuit.num_nodes(); ++n) {
        voltages[circuit.node_names[static_cast<std::size_t>(n)]] =
            solution.node_voltages[static_cast<std::size_t>(n)];
    }
    j["node_voltages"] = voltages;

    ordered_json currents = ordered_json::object();
    ordered_json states = ordered_json::object();
    for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
        const auto& el = circuit.elements[i];
        currents[el.name] = solution.element_currents[i];
        if (el.kind == ElementKind::Ntron) {
            currents[el.name + ".gate"] = solution.ntron_gate_currents[i];
        }
        if (el.kind == ElementKind::Jjfet || el.kind == ElementKind::Ntron) {
            states[el.name] = std::string(devices::to_string(solution.states[i]));
        }
    }
    j["branch_currents"] = currents;
    j["device_states"] = states;
    j["warnings"] = solution.warnings;

    return j.dump(2) + "\n";
}

}  // namespace jjsim::solver
