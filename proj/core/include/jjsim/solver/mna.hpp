#pragma once

#include <Eigen/Dense>
#include <vector>

#include "jjsim/devices/device_state.hpp"
#include "jjsim/netlist/circuit.hpp"

namespace jjsim::solver {

/// Resistance stamped for superconducting branches instead of a true short.
/// Keeps the MNA matrix non-singular while perturbing kilo-ohm-scale dividers
/// by less than 1e-7 relative.
inline constexpr double kSuperconductingFloorOhm = 1e-3;

/// One discrete state per circuit element, indexed like Circuit::elements.
/// Entries for non-device elements are present but ignored.
using StateVector = std::vector<devices::DeviceState>;

/// All JJFETs sub-gap, all nTrons superconducting.
StateVector initial_states(const netlist::Circuit& circuit);

/// MNA system: unknowns are the non-ground node voltages followed by one
/// branch current per voltage source.
struct LinearSystem {
    Eigen::MatrixXd a;
    Eigen::VectorXd rhs;
    int node_unknowns = 0;
    int branch_unknowns = 0;

    /// element index -> branch slot for voltage sources, -1 otherwise
    std::vector<int> vsource_branch;
    /// effective resistance stamped for the element's primary branch; 0 for sources
    std::vector<double> stamped_resistance;
    /// nTron gate branch resistance (the superconducting floor); 0 otherwise
    std::vector<double> stamped_gate_resistance;

    int dimension() const { return node_unknowns + branch_unknowns; }
};

/// Stamps the circuit for one relaxation iterate. JJFETs stamp as resistors
/// chosen by their state, with the gate overdrive taken from the previous
/// iterate's gate-node voltage (the gate itself draws no current). nTrons
/// stamp their channel per state and their gate as a short (numerical floor)
/// to the channel- node. Sources are evaluated at `time` and scaled by
/// `source_scale` (used by the source-stepping fallback).
LinearSystem assemble(const netlist::Circuit& circuit, const StateVector& states,
                      const std::vector<double>& prev_node_voltages, double time,
                      double source_scale = 1.0);

}  // namespace jjsim::solver
