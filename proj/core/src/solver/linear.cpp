#include "jjsim/solver/linear.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "jjsim/errors.hpp"

namespace jjsim::solver {

using netlist::ElementKind;

namespace {

/// Nodes reachable from ground through branches that constrain voltage
/// (resistive stamps and voltage sources). Current sources do not connect.
std::vector<std::string> unreachable_nodes(const netlist::Circuit& circuit) {
    const int n = circuit.num_nodes();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    auto link = [&](int a, int b) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    };
    for (const auto& el : circuit.elements) {
        switch (el.kind) {
            case ElementKind::Resistor:
            case ElementKind::Jjfet:
            case ElementKind::VoltageSource:
                link(el.nodes[0], el.nodes[1]);
                break;
            case ElementKind::Ntron:
                link(el.nodes[0], el.nodes[1]);
                link(el.nodes[2], el.nodes[1]);
                break;
            case ElementKind::CurrentSource:
            case ElementKind::Instance:
                break;
        }
    }

    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::queue<int> queue;
    queue.push(0);
    seen[0] = true;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = true;
                queue.push(v);
            }
        }
    }

    std::vector<std::string> missing;
    for (int i = 1; i < n; ++i) {
        if (!seen[static_cast<std::size_t>(i)]) {
            missing.push_back(circuit.node_names[static_cast<std::size_t>(i)]);
        }
    }
    return missing;
}

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& s : names) {
        if (!out.empty()) out += ", ";
        out += s;
    }
    return out;
}

}  // namespace

Eigen::VectorXd solve_linear(const LinearSystem& sys, const netlist::Circuit& circuit) {
    if (sys.dimension() == 0) return Eigen::VectorXd();

    const auto floating = unreachable_nodes(circuit);
    if (!floating.empty()) {
        throw SingularSystemError(
            "singular system: no path to ground from node(s) " + join(floating),
            floating);
    }

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.a);
    Eigen::VectorXd x = lu.solve(sys.rhs);

    const double b_norm = std::max(1.0, sys.rhs.lpNorm<Eigen::Infinity>());
    const double tol = 1e-12 * b_norm;
    for (int pass = 0; pass < 3; ++pass) {
        const Eigen::VectorXd r = sys.rhs - sys.a * x;
        if (r.lpNorm<Eigen::Infinity>() <= tol) break;
        x += lu.solve(r);
    }

    if (!x.allFinite() ||
        (sys.rhs - sys.a * x).lpNorm<Eigen::Infinity>() > tol) {
        // Connectivity was fine, so this is a numerically singular stamping
        // (e.g. a voltage-source loop).
        throw SingularSystemError(
            "singular or ill-conditioned system: direct solve failed to reach "
            "the residual tolerance",
            {});
    }
    return x;
}

}  // namespace jjsim::solver
