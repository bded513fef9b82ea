#include "jjsim/solver/dc.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "jjsim/devices/jjfet.hpp"
#include "jjsim/devices/ntron.hpp"
#include "jjsim/errors.hpp"
#include "jjsim/solver/linear.hpp"

namespace jjsim::solver {

using devices::DeviceState;
using netlist::CircuitElement;
using netlist::ElementKind;

double Solution::voltage_at(const netlist::Circuit& c, const std::string& node) const {
    const int idx = c.node_index(node);
    if (idx < 0) throw Error("unknown node '" + node + "'");
    return node_voltages[static_cast<std::size_t>(idx)];
}

namespace {

struct Extraction {
    std::vector<double> node_voltages;
    std::vector<double> currents;
    std::vector<double> gate_currents;
    double power = 0.0;
};

Extraction extract(const netlist::Circuit& circuit, const LinearSystem& sys,
                   const Eigen::VectorXd& x, double time, double scale) {
    Extraction ext;
    ext.node_voltages.assign(static_cast<std::size_t>(circuit.num_nodes()), 0.0);
    for (int i = 1; i < circuit.num_nodes(); ++i) {
        ext.node_voltages[static_cast<std::size_t>(i)] = x(i - 1);
    }
    ext.currents.assign(circuit.elements.size(), 0.0);
    ext.gate_currents.assign(circuit.elements.size(), 0.0);

    auto v = [&](int node) { return ext.node_voltages[static_cast<std::size_t>(node)]; };

    for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
        const CircuitElement& el = circuit.elements[i];
        switch (el.kind) {
            case ElementKind::Resistor:
            case ElementKind::Jjfet: {
                const double r = sys.stamped_resistance[i];
                const double drop = v(el.nodes[0]) - v(el.nodes[1]);
                ext.currents[i] = drop / r;
                ext.power += drop * drop / r;
                break;
            }
            case ElementKind::Ntron: {
                const double r_ch = sys.stamped_resistance[i];
                const double drop_ch = v(el.nodes[0]) - v(el.nodes[1]);
                ext.currents[i] = drop_ch / r_ch;
                ext.power += drop_ch * drop_ch / r_ch;
                const double r_g = sys.stamped_gate_resistance[i];
                const double drop_g = v(el.nodes[2]) - v(el.nodes[1]);
                ext.gate_currents[i] = drop_g / r_g;
                ext.power += drop_g * drop_g / r_g;
                break;
            }
            case ElementKind::CurrentSource:
                ext.currents[i] = el.waveform.value_at(time) * scale;
                break;
            case ElementKind::VoltageSource:
                ext.currents[i] = x(sys.node_unknowns + sys.vsource_branch[i]);
                break;
            case ElementKind::Instance:
                break;
        }
    }
    return ext;
}

StateVector recompute_states(const netlist::Circuit& circuit, const StateVector& prev,
                             const Extraction& ext) {
    StateVector next = prev;
    for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
        const CircuitElement& el = circuit.elements[i];
        if (el.kind == ElementKind::Jjfet) {
            const double v_gt =
                ext.node_voltages[static_cast<std::size_t>(el.nodes[2])] - el.jjfet->v_t;
            next[i] = devices::jjfet_state_condition(ext.currents[i], v_gt, *el.jjfet);
        } else if (el.kind == ElementKind::Ntron) {
            next[i] = devices::ntron_state_condition(ext.currents[i],
                                                     ext.gate_currents[i], prev[i],
                                                     *el.ntron);
        }
    }
    return next;
}

std::string render_states(const netlist::Circuit& circuit, const StateVector& states) {
    std::string out;
    for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
        const auto kind = circuit.elements[i].kind;
        if (kind != ElementKind::Jjfet && kind != ElementKind::Ntron) continue;
        if (!out.empty()) out += " ";
        out += circuit.elements[i].name;
        out += "=";
        out += devices::to_string(states[i]);
    }
    return out.empty() ? "(no devices)" : out;
}

Solution make_solution(const netlist::Circuit& circuit, const Extraction& ext,
                       StateVector states, bool converged, int iterations,
                       std::vector<std::string> warnings) {
    Solution sol;
    sol.node_voltages = ext.node_voltages;
    sol.element_currents = ext.currents;
    sol.ntron_gate_currents = ext.gate_currents;
    sol.states = std::move(states);
    sol.converged = converged;
    sol.iterations = iterations;
    sol.total_power = ext.power;
    sol.warnings = std::move(warnings);
    sol.max_kcl_residual = kcl_residual(circuit, sol);
    return sol;
}

struct RelaxOutcome {
    enum class Kind { FixedPoint, Cycle, Cap };

    Kind kind = Kind::Cap;
    Solution sol;
    StateVector last_states;
    StateVector prev_states;
    int iterations = 0;
};

using StateKey = std::vector<unsigned char>;

StateKey key_of(const StateVector& states) {
    StateKey key(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        key[i] = static_cast<unsigned char>(states[i]);
    }
    return key;
}

RelaxOutcome relax(const netlist::Circuit& circuit, StateVector states,
                   std::vector<double> prev_v, double time, double scale,
                   int max_iterations, double voltage_tol) {
    struct Visit {
        int iteration;
        double power;
        Eigen::VectorXd x;
        StateVector states;
        std::vector<double> stamped_r;
        std::vector<double> stamped_gate_r;
    };

    RelaxOutcome out;
    std::map<StateKey, Visit> visited;
    std::optional<Eigen::VectorXd> prev_x;
    StateVector prev_states = states;
    const bool needs_voltage_check = circuit.has_jjfet();

    for (int iter = 1; iter <= max_iterations; ++iter) {
        const LinearSystem sys = assemble(circuit, states, prev_v, time, scale);
        const Eigen::VectorXd x = solve_linear(sys, circuit);
        const Extraction ext = extract(circuit, sys, x, time, scale);
        const StateVector next = recompute_states(circuit, states, ext);

        bool voltage_ok = true;
        if (needs_voltage_check) {
            voltage_ok = prev_x.has_value() &&
                         (x - *prev_x).lpNorm<Eigen::Infinity>() < voltage_tol;
        }

        if (next == states && voltage_ok) {
            out.kind = RelaxOutcome::Kind::FixedPoint;
            out.iterations = iter;
            out.sol = make_solution(circuit, ext, states, true, iter, {});
            return out;
        }

        // A repeat of an already-solved configuration with bit-identical
        // stamps means the deterministic iteration retraces itself forever:
        // a discrete cycle. Identical states with different stamps (the gate
        // voltages are still settling) are not conclusive and keep iterating.
        if (auto hit = visited.find(key_of(states));
            hit != visited.end() && hit->second.stamped_r == sys.stamped_resistance &&
            hit->second.stamped_gate_r == sys.stamped_gate_resistance) {
            const int cycle_start = hit->second.iteration;
            const Visit* best = nullptr;
            for (const auto& [key, visit] : visited) {
                if (visit.iteration < cycle_start) continue;
                if (!best || visit.power < best->power ||
                    (visit.power == best->power && visit.iteration < best->iteration)) {
                    best = &visit;
                }
            }
            const int cycle_len = iter - cycle_start;
            std::vector<double> best_v(static_cast<std::size_t>(circuit.num_nodes()),
                                       0.0);
            for (int i = 1; i < circuit.num_nodes(); ++i) {
                best_v[static_cast<std::size_t>(i)] = best->x(i - 1);
            }
            const LinearSystem re_sys =
                assemble(circuit, best->states, best_v, time, scale);
            const Eigen::VectorXd re_x = solve_linear(re_sys, circuit);
            const Extraction re_ext = extract(circuit, re_sys, re_x, time, scale);

            out.kind = RelaxOutcome::Kind::Cycle;
            out.iterations = iter + 1;
            out.sol = make_solution(
                circuit, re_ext, best->states, false, iter + 1,
                {"state relaxation cycle of length " + std::to_string(cycle_len) +
                 " detected; reporting the minimum-dissipation member (" +
                 render_states(circuit, best->states) + ")"});
            return out;
        }

        visited[key_of(states)] = {iter,   ext.power,
                                   x,      states,
                                   sys.stamped_resistance, sys.stamped_gate_resistance};

        prev_states = states;
        states = next;
        prev_x = x;
        prev_v = ext.node_voltages;
    }

    out.kind = RelaxOutcome::Kind::Cap;
    out.iterations = max_iterations;
    out.last_states = states;
    out.prev_states = prev_states;
    return out;
}

}  // namespace

Solution solve_dc(const netlist::Circuit& circuit, const DcOptions& options) {
    StateVector init =
        options.initial_states ? *options.initial_states : initial_states(circuit);
    if (init.size() != circuit.elements.size()) {
        throw ContractError("initial state vector size does not match element count");
    }
    std::vector<double> init_v(static_cast<std::size_t>(circuit.num_nodes()), 0.0);
    if (options.initial_voltages) {
        if (options.initial_voltages->size() != init_v.size()) {
            throw ContractError("initial voltage vector size does not match node count");
        }
        init_v = *options.initial_voltages;
    }

    RelaxOutcome first = relax(circuit, init, init_v, options.time, 1.0,
                               options.max_iterations, options.voltage_tol);
    if (first.kind != RelaxOutcome::Kind::Cap) return first.sol;

    int total_iterations = first.iterations;

    if (options.source_stepping_fallback) {
        // Ramp every source from zero to nominal in ten steps, carrying the
        // relaxed states forward.
        StateVector states = init;
        bool stepping_ok = true;
        RelaxOutcome last;
        for (int k = 1; k <= 10 && stepping_ok; ++k) {
            last = relax(circuit, states, init_v, options.time, k / 10.0,
                         options.max_iterations, options.voltage_tol);
            total_iterations += last.iterations;
            if (last.kind == RelaxOutcome::Kind::FixedPoint) {
                states = last.sol.states;
            } else if (last.kind == RelaxOutcome::Kind::Cycle && k == 10) {
                last.sol.iterations = total_iterations;
                last.sol.warnings.push_back("source stepping engaged");
                return last.sol;
            } else {
                stepping_ok = false;
            }
        }
        if (stepping_ok) {
            Solution sol = last.sol;
            sol.iterations = total_iterations;
            sol.warnings.push_back("source stepping engaged");
            return sol;
        }
    }

    // No fixed point. Report the last two state vectors for diagnosis.
    Solution sol;
    sol.node_voltages.assign(static_cast<std::size_t>(circuit.num_nodes()), 0.0);
    sol.element_currents.assign(circuit.elements.size(), 0.0);
    sol.ntron_gate_currents.assign(circuit.elements.size(), 0.0);
    sol.states = first.last_states;
    sol.converged = false;
    sol.iterations = total_iterations;
    sol.warnings.push_back(
        "no fixed point within the iteration cap; last states: " +
        render_states(circuit, first.last_states) +
        "; previous: " + render_states(circuit, first.prev_states));
    return sol;
}

double kcl_residual(const netlist::Circuit& circuit, const Solution& solution) {
    std::vector<double> inflow(static_cast<std::size_t>(circuit.num_nodes()), 0.0);
    auto flow = [&](int from, int to, double i) {
        inflow[static_cast<std::size_t>(from)] -= i;
        inflow[static_cast<std::size_t>(to)] += i;
    };
    for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
        const CircuitElement& el = circuit.elements[i];
        if (el.kind == ElementKind::Instance) continue;
        flow(el.nodes[0], el.nodes[1], solution.element_currents[i]);
        if (el.kind == ElementKind::Ntron) {
            flow(el.nodes[2], el.nodes[1], solution.ntron_gate_currents[i]);
        }
    }
    double worst = 0.0;
    for (int n = 1; n < circuit.num_nodes(); ++n) {
        worst = std::max(worst, std::abs(inflow[static_cast<std::size_t>(n)]));
    }
    return worst;
}

bool states_consistent(const netlist::Circuit& circuit, const Solution& solution) {
    for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
        const CircuitElement& el = circuit.elements[i];
        if (el.kind == ElementKind::Jjfet) {
            const double v_gt =
                solution.node_voltages[static_cast<std::size_t>(el.nodes[2])] -
                el.jjfet->v_t;
            if (devices::jjfet_state_condition(solution.element_currents[i], v_gt,
                                               *el.jjfet) != solution.states[i]) {
                return false;
            }
        } else if (el.kind == ElementKind::Ntron) {
            if (devices::ntron_state_condition(solution.element_currents[i],
                                               solution.ntron_gate_currents[i],
                                               solution.states[i],
                                               *el.ntron) != solution.states[i]) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace jjsim::solver
