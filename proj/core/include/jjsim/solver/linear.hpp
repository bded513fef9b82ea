#pragma once

#include <Eigen/Dense>

#include "jjsim/netlist/circuit.hpp"
#include "jjsim/solver/mna.hpp"

namespace jjsim::solver {

/// Direct dense solve with partial pivoting plus iterative refinement until
/// the residual satisfies |Ax - b|_inf <= 1e-12 * max(1, |b|_inf).
///
/// Before factorizing, nodes without a conductive path to ground are detected
/// structurally and reported through SingularSystemError, naming the nodes.
Eigen::VectorXd solve_linear(const LinearSystem& sys, const netlist::Circuit& circuit);

}  // namespace jjsim::solver
