#pragma once

#include <string>

#include "jjsim/netlist/circuit.hpp"
#include "jjsim/solver/dc.hpp"

namespace jjsim::solver {

/// Operating-point report as a JSON object with node voltages, branch
/// currents (nTron gate branches appear as "<name>.gate"), device states,
/// convergence data and warnings. Key order follows the circuit and is
/// byte-stable across identical runs. A non-empty banner is emitted under a
/// "tool" key.
std::string solution_to_json(const netlist::Circuit& circuit, const Solution& solution,
                             const std::string& banner = "");

}  // namespace jjsim::solver
