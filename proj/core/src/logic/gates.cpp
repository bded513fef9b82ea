#include "jjsim/logic/gates.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "jjsim/errors.hpp"

namespace jjsim::logic {

using netlist::Element;
using netlist::ElementKind;
using netlist::NetlistAst;
using netlist::SourceWaveform;
using netlist::SubcktDef;

std::string to_string(GateKind kind) {
    switch (kind) {
        case GateKind::Copy: return "copy";
        case GateKind::Not: return "not";
        case GateKind::Nand2: return "nand2";
        case GateKind::Nor2: return "nor2";
        case GateKind::Maj3: return "maj3";
        case GateKind::Xor2: return "xor2";
    }
    return "?";
}

std::optional<GateKind> gate_kind_from_string(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "copy") return GateKind::Copy;
    if (lower == "not") return GateKind::Not;
    if (lower == "nand2") return GateKind::Nand2;
    if (lower == "nor2") return GateKind::Nor2;
    if (lower == "maj3") return GateKind::Maj3;
    if (lower == "xor2") return GateKind::Xor2;
    return std::nullopt;
}

int gate_input_count(GateKind kind) {
    switch (kind) {
        case GateKind::Copy:
        case GateKind::Not: return 1;
        case GateKind::Nand2:
        case GateKind::Nor2:
        case GateKind::Xor2: return 2;
        case GateKind::Maj3: return 3;
    }
    return 0;
}

bool gate_truth(GateKind kind, const std::vector<bool>& in) {
    switch (kind) {
        case GateKind::Copy: return in.at(0);
        case GateKind::Not: return !in.at(0);
        case GateKind::Nand2: return !(in.at(0) && in.at(1));
        case GateKind::Nor2: return !(in.at(0) || in.at(1));
        case GateKind::Maj3:
            return static_cast<int>(in.at(0)) + static_cast<int>(in.at(1)) +
                       static_cast<int>(in.at(2)) >= 2;
        case GateKind::Xor2: return in.at(0) != in.at(1);
    }
    return false;
}

bool stage_must_switch(GateKind kind, const std::vector<bool>& in) {
    switch (kind) {
        case GateKind::Copy: return in.at(0);
        case GateKind::Not: return !in.at(0);
        case GateKind::Nand2: return !(in.at(0) && in.at(1));
        case GateKind::Nor2: return !(in.at(0) || in.at(1));
        case GateKind::Maj3:
            // Active-low series core: resistive (output high) for minority.
            return static_cast<int>(in.at(0)) + static_cast<int>(in.at(1)) +
                       static_cast<int>(in.at(2)) <= 1;
        case GateKind::Xor2:
            throw ContractError("XOR2 is composite and has no stage of its own");
    }
    return false;
}

std::vector<GateKind> tuned_stages(GateKind kind) {
    switch (kind) {
        case GateKind::Copy: return {GateKind::Copy};
        case GateKind::Not: return {GateKind::Not};
        case GateKind::Nand2: return {GateKind::Nand2};
        case GateKind::Nor2: return {GateKind::Nor2};
        case GateKind::Maj3: return {GateKind::Maj3, GateKind::Not};
        case GateKind::Xor2:
            return {GateKind::Not, GateKind::Nand2, GateKind::Nor2};
    }
    return {};
}

namespace {

std::string subckt_name(GateKind kind) {
    switch (kind) {
        case GateKind::Copy: return "COPY";
        case GateKind::Not: return "NOT";
        case GateKind::Nand2: return "NAND2";
        case GateKind::Nor2: return "NOR2";
        case GateKind::Maj3: return "MAJ3";
        case GateKind::Xor2: return "XOR2";
    }
    return "?";
}

const std::vector<std::string>& input_names(GateKind kind) {
    static const std::vector<std::string> one{"a"};
    static const std::vector<std::string> two{"a", "b"};
    static const std::vector<std::string> three{"a", "b", "c"};
    switch (gate_input_count(kind)) {
        case 1: return one;
        case 2: return two;
        default: return three;
    }
}

Element resistor(std::string name, std::string n1, std::string n2, double ohms) {
    Element el;
    el.name = std::move(name);
    el.kind = ElementKind::Resistor;
    el.nodes = {std::move(n1), std::move(n2)};
    el.value = ohms;
    return el;
}

Element isource(std::string name, std::string np, std::string nn, double amps) {
    Element el;
    el.name = std::move(name);
    el.kind = ElementKind::CurrentSource;
    el.nodes = {std::move(np), std::move(nn)};
    el.waveform = SourceWaveform::dc(amps);
    return el;
}

Element vsource(std::string name, std::string np, std::string nn, double volts) {
    Element el;
    el.name = std::move(name);
    el.kind = ElementKind::VoltageSource;
    el.nodes = {std::move(np), std::move(nn)};
    el.waveform = SourceWaveform::dc(volts);
    return el;
}

Element jjfet(std::string name, std::string d, std::string s, std::string g,
              const std::string& model) {
    Element el;
    el.name = std::move(name);
    el.kind = ElementKind::Jjfet;
    el.nodes = {std::move(d), std::move(s), std::move(g)};
    el.model = model;
    return el;
}

Element ntron(std::string name, std::string chp, std::string chn, std::string g,
              const std::string& model) {
    Element el;
    el.name = std::move(name);
    el.kind = ElementKind::Ntron;
    el.nodes = {std::move(chp), std::move(chn), std::move(g)};
    el.model = model;
    return el;
}

Element instance(std::string name, std::vector<std::string> nodes,
                 const std::string& subckt) {
    Element el;
    el.name = std::move(name);
    el.kind = ElementKind::Instance;
    el.nodes = std::move(nodes);
    el.model = subckt;
    return el;
}

void check_bias(GateKind stage, const GateBias& b, const devices::NtronParams& nt,
                const LogicLevels& levels) {
    levels.validate();
    const double swing = levels.v_high - levels.v_low;
    if (std::abs(b.i_bias2 * nt.r_channel - swing) > 1e-9 * std::abs(swing)) {
        throw Error("bias for " + to_string(stage) +
                    ": i_bias2 * r_channel must equal the v_high - v_low swing");
    }
    if (!(b.i_bias1 > 0.0)) {
        throw Error("bias for " + to_string(stage) + ": i_bias1 must be > 0");
    }
    if (!(b.r_s > 0.0)) {
        throw Error("bias for " + to_string(stage) + ": r_s must be > 0");
    }
    if (stage == GateKind::Copy && !(b.r_p.has_value() && *b.r_p > 0.0)) {
        throw Error("bias for copy: the shunt resistor r_p is required");
    }
}

const GateBias& bias_for(GateKind stage, const BiasLibrary& biases) {
    auto it = biases.find(stage);
    if (it == biases.end()) {
        throw Error("no tuned bias for stage '" + to_string(stage) + "'");
    }
    return it->second;
}

/// The one-stage input network plus the level-restoring nTron output. The
/// bias current enters at n1; the input network splits it between the nTron
/// gate path and a shunt path, both returning to the v_bias rail.
std::vector<Element> stage_elements(GateKind kind, const GateModels& m,
                                    const GateBias& b, const std::string& out) {
    std::vector<Element> els;
    els.push_back(isource("IB1", "0", "n1", b.i_bias1));
    switch (kind) {
        case GateKind::Copy:
            els.push_back(jjfet("J1", "n1", "mid", "a", m.jjfet_model));
            els.push_back(resistor("RS", "mid", "g", b.r_s));
            els.push_back(resistor("RP", "n1", "vb", *b.r_p));
            break;
        case GateKind::Not:
            els.push_back(resistor("RS", "n1", "g", b.r_s));
            els.push_back(jjfet("J1", "n1", "vb", "a", m.jjfet_model));
            break;
        case GateKind::Nand2:
            els.push_back(resistor("RS", "n1", "g", b.r_s));
            els.push_back(jjfet("J1", "n1", "m1", "a", m.jjfet_model));
            els.push_back(jjfet("J2", "m1", "vb", "b", m.jjfet_model));
            break;
        case GateKind::Nor2:
            els.push_back(resistor("RS", "n1", "g", b.r_s));
            els.push_back(jjfet("J1", "n1", "vb", "a", m.jjfet_model));
            els.push_back(jjfet("J2", "n1", "vb", "b", m.jjfet_model));
            break;
        case GateKind::Maj3:
            els.push_back(resistor("RS", "n1", "g", b.r_s));
            els.push_back(jjfet("J1", "n1", "m1", "a", m.jjfet_model));
            els.push_back(jjfet("J2", "m1", "m2", "b", m.jjfet_model));
            els.push_back(jjfet("J3", "m2", "vb", "c", m.jjfet_model));
            break;
        case GateKind::Xor2:
            throw ContractError("XOR2 has no primitive stage");
    }
    els.push_back(ntron("NOUT", out, "vb", "g", m.ntron_model));
    els.push_back(isource("IB2", "0", out, b.i_bias2));
    els.push_back(vsource("VB", "vb", "0", b.v_bias));
    return els;
}

SubcktDef primitive_subckt(GateKind kind, const GateModels& m, const GateBias& b) {
    SubcktDef def;
    def.name = subckt_name(kind);
    def.ports = input_names(kind);
    def.ports.push_back("out");
    def.body = stage_elements(kind, m, b, "out");
    return def;
}

NetlistAst gate_ast(GateKind kind, const GateModels& m, const BiasLibrary& biases,
                    const devices::NtronParams& nt, const LogicLevels& levels,
                    bool stage_only) {
    const std::vector<GateKind> needed =
        stage_only ? std::vector<GateKind>{kind} : tuned_stages(kind);
    for (GateKind stage : needed) {
        check_bias(stage, bias_for(stage, biases), nt, levels);
    }

    NetlistAst ast;
    ast.models.push_back({m.jjfet_model, netlist::DeviceKind::Jjfet, m.jjfet_card, {}});
    ast.models.push_back({m.ntron_model, netlist::DeviceKind::Ntron, m.ntron_card, {}});

    switch (kind) {
        case GateKind::Copy:
        case GateKind::Not:
        case GateKind::Nand2:
        case GateKind::Nor2:
            ast.subckts.push_back(primitive_subckt(kind, m, bias_for(kind, biases)));
            break;
        case GateKind::Maj3: {
            if (stage_only) {
                ast.subckts.push_back(primitive_subckt(kind, m, bias_for(kind, biases)));
                break;
            }
            ast.subckts.push_back(
                primitive_subckt(GateKind::Not, m, bias_for(GateKind::Not, biases)));
            SubcktDef maj;
            maj.name = subckt_name(GateKind::Maj3);
            maj.ports = {"a", "b", "c", "out"};
            maj.body = stage_elements(GateKind::Maj3, m, bias_for(GateKind::Maj3, biases),
                                      "w");
            maj.body.push_back(instance("XINV", {"w", "out"}, "NOT"));
            ast.subckts.push_back(std::move(maj));
            break;
        }
        case GateKind::Xor2: {
            // a xor b = NOR2(NOR2(a, b), NOT(NAND2(a, b))), built strictly
            // from the three primitive subcircuits.
            ast.subckts.push_back(
                primitive_subckt(GateKind::Not, m, bias_for(GateKind::Not, biases)));
            ast.subckts.push_back(
                primitive_subckt(GateKind::Nand2, m, bias_for(GateKind::Nand2, biases)));
            ast.subckts.push_back(
                primitive_subckt(GateKind::Nor2, m, bias_for(GateKind::Nor2, biases)));
            SubcktDef xor2;
            xor2.name = subckt_name(GateKind::Xor2);
            xor2.ports = {"a", "b", "out"};
            xor2.body.push_back(instance("XN1", {"a", "b", "w1"}, "NOR2"));
            xor2.body.push_back(instance("XND", {"a", "b", "w2"}, "NAND2"));
            xor2.body.push_back(instance("XINV", {"w2", "w3"}, "NOT"));
            xor2.body.push_back(instance("XN2", {"w1", "w3", "out"}, "NOR2"));
            ast.subckts.push_back(std::move(xor2));
            break;
        }
    }
    return ast;
}

BuiltGate finish_gate(GateKind kind, NetlistAst ast, const LogicLevels& levels) {
    BuiltGate gate;
    gate.kind = kind;
    gate.inputs = input_names(kind);
    gate.output = "out";

    for (const auto& in : gate.inputs) {
        std::string upper = in;
        std::transform(upper.begin(), upper.end(), upper.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        const std::string src = "VIN" + upper;
        ast.elements.push_back(vsource(src, in, "0", levels.v_low));
        gate.input_sources.push_back(src);
    }

    std::vector<std::string> nodes = gate.inputs;
    nodes.push_back(gate.output);
    ast.elements.push_back(instance("XG", std::move(nodes), ast.subckts.back().name));

    ast.analysis = {netlist::AnalysisSpec::Kind::Op, 0.0, 0.0};
    ast.probes.push_back({netlist::Probe::Kind::NodeVoltage, gate.output});

    gate.ast = std::move(ast);
    return gate;
}

}  // namespace

BuiltGate build_gate(GateKind kind, const GateModels& models, const BiasLibrary& biases,
                     const devices::NtronParams& ntron, const LogicLevels& levels) {
    return finish_gate(kind, gate_ast(kind, models, biases, ntron, levels, false),
                       levels);
}

BuiltGate build_tuning_stage(GateKind kind, const GateModels& models,
                             const GateBias& bias, const devices::NtronParams& ntron,
                             const LogicLevels& levels) {
    if (kind == GateKind::Xor2) {
        throw ContractError("XOR2 is composite; tune its primitive stages instead");
    }
    BiasLibrary biases;
    biases[kind] = bias;
    if (kind == GateKind::Maj3) {
        return finish_gate(kind, gate_ast(kind, models, biases, ntron, levels, true),
                           levels);
    }
    return finish_gate(kind, gate_ast(kind, models, biases, ntron, levels, false),
                       levels);
}

std::string bias_library_to_json(const BiasLibrary& biases, const std::string& banner) {
    nlohmann::ordered_json j;
    if (!banner.empty()) j["tool"] = banner;
    nlohmann::ordered_json gates;
    for (const auto& [kind, b] : biases) {
        nlohmann::ordered_json entry;
        entry["i_bias1"] = b.i_bias1;
        entry["i_bias2"] = b.i_bias2;
        entry["v_bias"] = b.v_bias;
        entry["r_s"] = b.r_s;
        if (b.r_p) {
            entry["r_p"] = *b.r_p;
        } else {
            entry["r_p"] = nullptr;
        }
        gates[to_string(kind)] = std::move(entry);
    }
    j["gates"] = std::move(gates);
    return j.dump(2) + "\n";
}

BiasLibrary bias_library_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed bias file: ") + e.what());
    }
    if (!j.contains("gates") || !j["gates"].is_object()) {
        throw Error("bias file needs a top-level \"gates\" object");
    }
    BiasLibrary biases;
    for (const auto& [name, entry] : j["gates"].items()) {
        const auto kind = gate_kind_from_string(name);
        if (!kind) throw Error("bias file: unknown gate kind '" + name + "'");
        GateBias b;
        try {
            b.i_bias1 = entry.at("i_bias1").get<double>();
            b.i_bias2 = entry.at("i_bias2").get<double>();
            b.v_bias = entry.at("v_bias").get<double>();
            b.r_s = entry.at("r_s").get<double>();
            if (entry.contains("r_p") && !entry["r_p"].is_null()) {
                b.r_p = entry["r_p"].get<double>();
            }
        } catch (const nlohmann::json::exception& e) {
            throw Error("bias file entry '" + name + "': " + e.what());
        }
        biases[*kind] = b;
    }
    return biases;
}

}  // namespace jjsim::logic
