#include <algorithm>
#include <filesystem>
#include <unordered_map>

#include "jjsim/errors.hpp"
#include "jjsim/netlist/circuit.hpp"

namespace jjsim::netlist {

int Circuit::node_index(const std::string& name) const {
    auto it = std::find(node_names.begin(), node_names.end(), name);
    return it == node_names.end() ? -1 : static_cast<int>(it - node_names.begin());
}

int Circuit::element_index(const std::string& name) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

bool Circuit::has_jjfet() const {
    return std::any_of(elements.begin(), elements.end(), [](const CircuitElement& e) {
        return e.kind == ElementKind::Jjfet;
    });
}

int Circuit::count_kind(ElementKind kind) const {
    return static_cast<int>(std::count_if(
        elements.begin(), elements.end(),
        [&](const CircuitElement& e) { return e.kind == kind; }));
}

namespace {

namespace fs = std::filesystem;

class Elaborator {
public:
    Elaborator(const NetlistAst& ast, const ElaborationOptions& opts)
        : ast_(ast), opts_(opts) {
        circuit_.node_names.push_back("0");
        circuit_.analysis = ast.analysis;
        circuit_.probes = ast.probes;
    }

    Circuit run() {
        resolve_models();
        std::vector<std::string> stack;
        expand(ast_.elements, "", {}, stack);

        if (!circuit_.elements.empty()) {
            const bool grounded = std::any_of(
                circuit_.elements.begin(), circuit_.elements.end(),
                [](const CircuitElement& e) {
                    return std::find(e.nodes.begin(), e.nodes.end(), 0) != e.nodes.end();
                });
            if (!grounded) {
                throw ElaborationError("no element connects to ground node '0'");
            }
        }
        return std::move(circuit_);
    }

private:
    int intern_node(const std::string& name) {
        const int existing = circuit_.node_index(name);
        if (existing >= 0) return existing;
        circuit_.node_names.push_back(name);
        return static_cast<int>(circuit_.node_names.size()) - 1;
    }

    std::string resolve_card_path(const std::string& path) const {
        if (fs::path(path).is_absolute()) return path;
        std::vector<std::string> candidates;
        if (!opts_.netlist_dir.empty()) {
            candidates.push_back((fs::path(opts_.netlist_dir) / path).string());
        }
        for (const auto& dir : opts_.card_search_paths) {
            candidates.push_back((fs::path(dir) / path).string());
        }
        candidates.push_back(path);
        for (const auto& c : candidates) {
            if (fs::exists(c)) return c;
        }
        return candidates.back();  // let load_card report the failure
    }

    const devices::DeviceCard& card_for(const std::string& path) {
        auto& cache = opts_.card_cache ? *opts_.card_cache : local_cache_;
        auto it = cache.find(path);
        if (it == cache.end()) {
            it = cache.emplace(path, devices::load_card(path)).first;
        }
        return it->second;
    }

    void resolve_models() {
        for (const auto& def : ast_.models) {
            const std::string resolved = resolve_card_path(def.card_path);
            const auto& card = card_for(resolved);
            if (def.device == DeviceKind::Jjfet) {
                jjfets_[def.name] = std::make_shared<const devices::JjfetParams>(
                    devices::jjfet_from_card(card, def.overrides));
            } else {
                ntrons_[def.name] = std::make_shared<const devices::NtronParams>(
                    devices::ntron_from_card(card, def.overrides));
            }
        }
    }

    const SubcktDef& find_subckt(const std::string& name) const {
        for (const auto& s : ast_.subckts) {
            if (s.name == name) return s;
        }
        throw ElaborationError("unknown subcircuit '" + name + "'");
    }

    /// Maps a body-scope node name to a flat node name.
    static std::string map_node(const std::string& name, const std::string& prefix,
                                const std::map<std::string, std::string>& ports) {
        if (name == "0") return "0";
        if (auto it = ports.find(name); it != ports.end()) return it->second;
        return prefix + name;
    }

    void expand(const std::vector<Element>& body, const std::string& prefix,
                const std::map<std::string, std::string>& ports,
                std::vector<std::string>& stack) {
        for (const auto& el : body) {
            if (el.kind == ElementKind::Instance) {
                const SubcktDef& sub = find_subckt(el.model);
                if (std::find(stack.begin(), stack.end(), sub.name) != stack.end()) {
                    throw ElaborationError("recursive subcircuit '" + sub.name + "'");
                }
                if (el.nodes.size() != sub.ports.size()) {
                    throw ElaborationError(
                        "port-count mismatch for '" + prefix + el.name + "': got " +
                        std::to_string(el.nodes.size()) + " nodes, subcircuit '" +
                        sub.name + "' has " + std::to_string(sub.ports.size()) +
                        " ports");
                }
                std::map<std::string, std::string> inner_ports;
                for (std::size_t i = 0; i < sub.ports.size(); ++i) {
                    inner_ports[sub.ports[i]] = map_node(el.nodes[i], prefix, ports);
                }
                stack.push_back(sub.name);
                expand(sub.body, prefix + el.name + ".", inner_ports, stack);
                stack.pop_back();
                continue;
            }

            CircuitElement out;
            out.name = prefix + el.name;
            out.kind = el.kind;
            out.value = el.value;
            if (el.waveform) out.waveform = *el.waveform;
            for (const auto& n : el.nodes) {
                out.nodes.push_back(intern_node(map_node(n, prefix, ports)));
            }
            if (el.kind == ElementKind::Jjfet) {
                auto it = jjfets_.find(el.model);
                if (it == jjfets_.end()) {
                    throw ElaborationError("unresolved JJFET model '" + el.model +
                                           "' for element '" + out.name + "'");
                }
                out.jjfet = it->second;
            } else if (el.kind == ElementKind::Ntron) {
                auto it = ntrons_.find(el.model);
                if (it == ntrons_.end()) {
                    throw ElaborationError("unresolved NTRON model '" + el.model +
                                           "' for element '" + out.name + "'");
                }
                out.ntron = it->second;
            }
            circuit_.elements.push_back(std::move(out));
        }
    }

    const NetlistAst& ast_;
    const ElaborationOptions& opts_;
    Circuit circuit_;
    CardCache local_cache_;
    std::unordered_map<std::string, std::shared_ptr<const devices::JjfetParams>> jjfets_;
    std::unordered_map<std::string, std::shared_ptr<const devices::NtronParams>> ntrons_;
};

}  // namespace

Circuit elaborate(const NetlistAst& ast, const ElaborationOptions& opts) {
    return Elaborator(ast, opts).run();
}

}  // namespace jjsim::netlist
