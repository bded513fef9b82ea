#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jjsim/devices/ntron.hpp"
#include "jjsim/logic/levels.hpp"
#include "jjsim/netlist/ast.hpp"

namespace jjsim::logic {

/// XOR2 is composite (built from NOT/NAND2/NOR2 subcircuits); the others are
/// primitive one-stage templates.
enum class GateKind { Copy, Not, Nand2, Nor2, Maj3, Xor2 };

std::string to_string(GateKind kind);  // lowercase: "copy", "nand2", ...
std::optional<GateKind> gate_kind_from_string(std::string_view name);

int gate_input_count(GateKind kind);

/// Boolean function the gate realizes.
bool gate_truth(GateKind kind, const std::vector<bool>& inputs);

/// Whether the stage's nTron must switch resistive (output high) for the
/// given inputs. For MAJ3 this describes the active-low series core, whose
/// cascaded inverter restores the majority polarity.
bool stage_must_switch(GateKind kind, const std::vector<bool>& inputs);

/// Stages of a gate that carry their own bias point. Composite gates list
/// the primitive stages they are assembled from.
std::vector<GateKind> tuned_stages(GateKind kind);

/// Bias point of one gate stage. The output-swing constraint
/// i_bias2 * r_channel = v_high - v_low ties i_bias2 to the nTron card.
struct GateBias {
    double i_bias1 = 0.0;        ///< input-stage bias [A]
    double i_bias2 = 35e-6;      ///< nTron channel bias [A]
    double v_bias = -0.7;        ///< nTron channel return rail [V]
    double r_s = 0.0;            ///< series resistor into the nTron gate [ohm]
    std::optional<double> r_p;   ///< shunt resistor, Copy gate only [ohm]
};

/// Tuned biases per stage kind, as produced by the tuner and consumed by the
/// gate builder.
using BiasLibrary = std::map<GateKind, GateBias>;

/// Model names and card paths written into generated netlists.
struct GateModels {
    std::string jjfet_model = "JJ";
    std::string jjfet_card;
    std::string ntron_model = "NT";
    std::string ntron_card;
};

/// A generated gate circuit: subcircuit definitions plus a top level that
/// instantiates the gate, drives every input with a DC source at v_low, and
/// probes the output. Ready for elaborate() or the netlist printer.
struct BuiltGate {
    GateKind kind = GateKind::Copy;
    netlist::NetlistAst ast;
    std::vector<std::string> inputs;         ///< top-level input node names
    std::vector<std::string> input_sources;  ///< names of the driving V sources
    std::string output;                      ///< top-level output node name
};

/// Builds the full gate topology. `biases` must contain an entry for every
/// tuned stage of `kind`; `ntron` is the card the bias swing constraint is
/// checked against. Throws Error when a stage bias is missing or invalid.
BuiltGate build_gate(GateKind kind, const GateModels& models, const BiasLibrary& biases,
                     const devices::NtronParams& ntron, const LogicLevels& levels = {});

/// Single-stage variant used by the bias tuner: for MAJ3 the series core
/// without its restoring inverter, for primitives the same circuit as
/// build_gate. XOR2 has no stage of its own and is rejected.
BuiltGate build_tuning_stage(GateKind kind, const GateModels& models,
                             const GateBias& bias, const devices::NtronParams& ntron,
                             const LogicLevels& levels = {});

/// Bias-library JSON: {"gates": {"not": {"i_bias1": ..., ...}, ...}}.
std::string bias_library_to_json(const BiasLibrary& biases, const std::string& banner = "");
BiasLibrary bias_library_from_json(const std::string& text);

}  // namespace jjsim::logic
