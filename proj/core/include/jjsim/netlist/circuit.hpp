#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "jjsim/devices/card.hpp"
#include "jjsim/netlist/ast.hpp"

namespace jjsim::netlist {

/// Flat element after subcircuit expansion. Names are dot-qualified with the
/// instance path ("X1.J2"); node references are indices into
/// Circuit::node_names. Device elements carry their resolved parameter cards.
struct CircuitElement {
    std::string name;
    ElementKind kind = ElementKind::Resistor;
    std::vector<int> nodes;
    double value = 0.0;       // resistor ohms
    SourceWaveform waveform;  // sources
    std::shared_ptr<const devices::JjfetParams> jjfet;
    std::shared_ptr<const devices::NtronParams> ntron;
};

/// Fully elaborated netlist: ground is always node index 0 under the name
/// "0". Immutable in normal use; truth-table sweeps work on copies.
struct Circuit {
    std::vector<std::string> node_names;  // [0] == "0"
    std::vector<CircuitElement> elements;
    AnalysisSpec analysis;
    std::vector<Probe> probes;

    /// Index of a node name, or -1 when absent.
    int node_index(const std::string& name) const;

    /// Index of an element by its flat (dot-qualified) name, or -1.
    int element_index(const std::string& name) const;

    int num_nodes() const { return static_cast<int>(node_names.size()); }

    bool has_jjfet() const;
    int count_kind(ElementKind kind) const;
};

/// Shared cache of parsed device cards, keyed by resolved path. Lets repeated
/// elaborations (tuner grids, truth-table rows) read each card file once.
using CardCache = std::map<std::string, devices::DeviceCard>;

struct ElaborationOptions {
    /// Directory of the netlist file; card paths resolve here first.
    std::string netlist_dir;
    /// Additional card search directories, in precedence order.
    std::vector<std::string> card_search_paths;
    /// Optional cross-call card cache.
    std::shared_ptr<CardCache> card_cache;
};

/// Expands subcircuit instances depth-first with dot-qualified names, splices
/// ports onto caller nodes, and resolves device models against their cards.
/// Deterministic: the same AST always yields the identical Circuit.
Circuit elaborate(const NetlistAst& ast, const ElaborationOptions& opts = {});

}  // namespace jjsim::netlist
