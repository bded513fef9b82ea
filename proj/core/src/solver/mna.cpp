#include "jjsim/solver/mna.hpp"

#include "jjsim/devices/jjfet.hpp"
#include "jjsim/devices/ntron.hpp"
#include "jjsim/errors.hpp"

namespace jjsim::solver {

using devices::DeviceState;
using netlist::CircuitElement;
using netlist::ElementKind;

StateVector initial_states(const netlist::Circuit& circuit) {
    StateVector states(circuit.elements.size(), DeviceState::JjfetSubGap);
    for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
        if (circuit.elements[i].kind == ElementKind::Ntron) {
            states[i] = DeviceState::NtronSuperconducting;
        }
    }
    return states;
}

namespace {

// Unknown slot of node index n, or -1 for ground.
inline int slot(int n) { return n - 1; }

void stamp_conductance(Eigen::MatrixXd& a, int na, int nb, double g) {
    const int ia = slot(na);
    const int ib = slot(nb);
    if (ia >= 0) {
        a(ia, ia) += g;
        if (ib >= 0) a(ia, ib) -= g;
    }
    if (ib >= 0) {
        a(ib, ib) += g;
        if (ia >= 0) a(ib, ia) -= g;
    }
}

double jjfet_stamp_resistance(const CircuitElement& el, DeviceState state,
                              const std::vector<double>& prev_v) {
    const double v_gate = prev_v[static_cast<std::size_t>(el.nodes[2])];
    const double v_gt = v_gate - el.jjfet->v_t;
    switch (state) {
        case DeviceState::JjfetSubGap: return el.jjfet->r_sg.eval(v_gt);
        case DeviceState::JjfetNormal: return el.jjfet->r_n.eval(v_gt);
        default:
            throw ContractError("JJFET '" + el.name + "' carries a non-JJFET state");
    }
}

double ntron_stamp_resistance(const CircuitElement& el, DeviceState state) {
    switch (state) {
        case DeviceState::NtronSuperconducting: return kSuperconductingFloorOhm;
        case DeviceState::NtronResistive: return el.ntron->r_channel;
        default:
            throw ContractError("nTron '" + el.name + "' carries a non-nTron state");
    }
}

}  // namespace

LinearSystem assemble(const netlist::Circuit& circuit, const StateVector& states,
                      const std::vector<double>& prev_node_voltages, double time,
                      double source_scale) {
    LinearSystem sys;
    sys.node_unknowns = circuit.num_nodes() - 1;
    sys.vsource_branch.assign(circuit.elements.size(), -1);
    sys.stamped_resistance.assign(circuit.elements.size(), 0.0);
    sys.stamped_gate_resistance.assign(circuit.elements.size(), 0.0);

    for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
        if (circuit.elements[i].kind == ElementKind::VoltageSource) {
            sys.vsource_branch[i] = sys.branch_unknowns++;
        }
    }

    const int dim = sys.dimension();
    sys.a = Eigen::MatrixXd::Zero(dim, dim);
    sys.rhs = Eigen::VectorXd::Zero(dim);

    for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
        const CircuitElement& el = circuit.elements[i];
        switch (el.kind) {
            case ElementKind::Resistor: {
                sys.stamped_resistance[i] = el.value;
                stamp_conductance(sys.a, el.nodes[0], el.nodes[1], 1.0 / el.value);
                break;
            }
            case ElementKind::Jjfet: {
                const double r = jjfet_stamp_resistance(el, states[i], prev_node_voltages);
                sys.stamped_resistance[i] = r;
                stamp_conductance(sys.a, el.nodes[0], el.nodes[1], 1.0 / r);
                break;
            }
            case ElementKind::Ntron: {
                const double r_ch = ntron_stamp_resistance(el, states[i]);
                sys.stamped_resistance[i] = r_ch;
                stamp_conductance(sys.a, el.nodes[0], el.nodes[1], 1.0 / r_ch);
                sys.stamped_gate_resistance[i] = kSuperconductingFloorOhm;
                stamp_conductance(sys.a, el.nodes[2], el.nodes[1],
                                  1.0 / kSuperconductingFloorOhm);
                break;
            }
            case ElementKind::CurrentSource: {
                const double value = el.waveform.value_at(time) * source_scale;
                const int ip = slot(el.nodes[0]);
                const int in = slot(el.nodes[1]);
                if (ip >= 0) sys.rhs(ip) -= value;
                if (in >= 0) sys.rhs(in) += value;
                break;
            }
            case ElementKind::VoltageSource: {
                const int br = sys.node_unknowns + sys.vsource_branch[i];
                const int ip = slot(el.nodes[0]);
                const int in = slot(el.nodes[1]);
                if (ip >= 0) {
                    sys.a(ip, br) += 1.0;
                    sys.a(br, ip) += 1.0;
                }
                if (in >= 0) {
                    sys.a(in, br) -= 1.0;
                    sys.a(br, in) -= 1.0;
                }
                sys.rhs(br) = el.waveform.value_at(time) * source_scale;
                break;
            }
            case ElementKind::Instance:
                throw ContractError("unexpanded instance '" + el.name +
                                    "' in elaborated circuit");
        }
    }
    return sys;
}

}  // namespace jjsim::solver
