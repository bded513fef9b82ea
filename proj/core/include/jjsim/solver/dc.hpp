#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jjsim/netlist/circuit.hpp"
#include "jjsim/solver/mna.hpp"

namespace jjsim::solver {

/// DC operating point. In a converged solution every device's stored state
/// equals its state condition recomputed from the solved branch quantities,
/// and the worst KCL imbalance is at most 1e-12 A.
struct Solution {
    std::vector<double> node_voltages;       ///< per node index, [0] = ground = 0
    std::vector<double> element_currents;    ///< primary branch, per element index
    std::vector<double> ntron_gate_currents; ///< per element index, 0 unless nTron
    StateVector states;                      ///< per element index
    bool converged = false;
    int iterations = 0;
    double max_kcl_residual = 0.0;  ///< amperes
    double total_power = 0.0;       ///< watts dissipated in resistive branches
    std::vector<std::string> warnings;

    double voltage_at(const netlist::Circuit& c, const std::string& node) const;
};

struct DcOptions {
    double time = 0.0;
    std::optional<StateVector> initial_states;
    /// Node voltages seeding the first iterate's JJFET overdrives (full
    /// node-indexed vector); zeros when absent. Transient sweeps warm-start
    /// with the previous timestep's voltages.
    std::optional<std::vector<double>> initial_voltages;
    int max_iterations = 100;
    double voltage_tol = 1e-9;
    bool source_stepping_fallback = true;
};

/// Fixed-point relaxation: assemble for the current state vector, solve the
/// linear system, reclassify every device from the new branch quantities, and
/// repeat until no state changes and successive node-voltage vectors agree to
/// voltage_tol. A repeated state vector is resolved by re-solving the cycle
/// member with minimum dissipated power and flagging the solution as
/// non-converged. If the iteration cap is hit without a repeat, all sources
/// are ramped from zero to nominal in ten steps (once) before giving up.
Solution solve_dc(const netlist::Circuit& circuit, const DcOptions& options = {});

/// Worst KCL imbalance: max over non-ground nodes of the absolute sum of the
/// solution's branch currents into the node. Uses only the stored per-branch
/// currents, not the solver's internal matrices.
double kcl_residual(const netlist::Circuit& circuit, const Solution& solution);

/// Recomputes every device's state condition from the solution's branch
/// quantities and compares against the stored states.
bool states_consistent(const netlist::Circuit& circuit, const Solution& solution);

}  // namespace jjsim::solver
