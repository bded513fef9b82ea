// jjsim command-line front end: netlist solving, gate generation, truth-table
// verification and bias tuning.
//
// Exit codes are a stable contract:
//   0  success / all checks passed
//   1  input error (usage, file, parse, elaboration, singular system)
//   2  solver non-convergence (report still emitted)
//   3  logic verification failure
//   4  tuner infeasibility

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jjsim/devices/card.hpp"
#include "jjsim/errors.hpp"
#include "jjsim/logic/gates.hpp"
#include "jjsim/logic/truth_table.hpp"
#include "jjsim/logic/tuner.hpp"
#include "jjsim/netlist/circuit.hpp"
#include "jjsim/netlist/parser.hpp"
#include "jjsim/netlist/printer.hpp"
#include "jjsim/solver/dc.hpp"
#include "jjsim/solver/report.hpp"
#include "jjsim/solver/transient.hpp"

namespace fs = std::filesystem;
using namespace jjsim;

namespace {

constexpr const char* kVersion = "jjsim 0.1.0";

struct CommonOptions {
    std::vector<std::string> card_paths;
    std::string out_path;
    bool no_banner = false;

    std::string banner() const { return no_banner ? "" : kVersion; }
};

void write_output(const CommonOptions& opts, const std::string& content) {
    if (opts.out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(opts.out_path);
    if (!out) throw Error("cannot write output file '" + opts.out_path + "'");
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

netlist::Circuit load_circuit(const std::string& path, const CommonOptions& opts) {
    const netlist::NetlistAst ast = netlist::parse(read_file(path));
    netlist::ElaborationOptions eopts;
    eopts.netlist_dir = fs::path(path).parent_path().string();
    eopts.card_search_paths = opts.card_paths;
    return netlist::elaborate(ast, eopts);
}

netlist::Probe parse_probe(const std::string& text) {
    const auto open = text.find('(');
    if (open == std::string::npos || text.empty() || text.back() != ')') {
        throw Error("probe must look like v(<node>) or i(<element>): '" + text + "'");
    }
    const std::string head = text.substr(0, open);
    netlist::Probe probe;
    if (head == "v" || head == "V") {
        probe.kind = netlist::Probe::Kind::NodeVoltage;
    } else if (head == "i" || head == "I") {
        probe.kind = netlist::Probe::Kind::ElementCurrent;
    } else {
        throw Error("probe must start with v( or i(: '" + text + "'");
    }
    probe.target = text.substr(open + 1, text.size() - open - 2);
    if (probe.target.empty()) throw Error("empty probe target in '" + text + "'");
    return probe;
}

/// Flag values accept the netlist number grammar, SI suffixes included.
double parse_amount(const std::string& text, const char* flag) {
    try {
        return netlist::parse_si_number(text);
    } catch (const ParseError&) {
        throw Error(std::string(flag) + ": malformed number '" + text + "'");
    }
}

logic::GateKind parse_gate_kind(const std::string& name) {
    const auto kind = logic::gate_kind_from_string(name);
    if (!kind) {
        throw Error("unknown gate kind '" + name +
                    "' (expected copy, not, nand2, nor2, maj3 or xor2)");
    }
    return *kind;
}

struct GateCards {
    std::string jjfet_card;
    std::string ntron_card;
    devices::JjfetParams jjfet;
    devices::NtronParams ntron;
};

GateCards load_gate_cards(const std::string& jjfet_path, const std::string& ntron_path) {
    GateCards cards;
    cards.jjfet_card = jjfet_path;
    cards.ntron_card = ntron_path;
    cards.jjfet = devices::jjfet_from_card(devices::load_card(jjfet_path));
    cards.ntron = devices::ntron_from_card(devices::load_card(ntron_path));
    return cards;
}

logic::GateModels make_models(const GateCards& cards) {
    logic::GateModels models;
    models.jjfet_card = cards.jjfet_card;
    models.ntron_card = cards.ntron_card;
    return models;
}

int cmd_op(const std::string& netlist_path, const CommonOptions& opts) {
    const netlist::Circuit circuit = load_circuit(netlist_path, opts);
    const solver::Solution sol = solver::solve_dc(circuit);
    write_output(opts, solver::solution_to_json(circuit, sol, opts.banner()));
    return sol.converged ? 0 : 2;
}

int cmd_tran(const std::string& netlist_path, const std::string& step,
             const std::string& stop, const std::vector<std::string>& probe_args,
             const CommonOptions& opts) {
    const netlist::Circuit circuit = load_circuit(netlist_path, opts);

    double tstep = 0.0;
    double tstop = 0.0;
    if (circuit.analysis.kind == netlist::AnalysisSpec::Kind::Tran) {
        tstep = circuit.analysis.step;
        tstop = circuit.analysis.stop;
    }
    if (!step.empty()) tstep = parse_amount(step, "--step");
    if (!stop.empty()) tstop = parse_amount(stop, "--stop");
    if (tstep <= 0.0 || tstop <= 0.0) {
        throw Error("transient needs --step and --stop (or a .tran directive)");
    }

    std::vector<netlist::Probe> extra;
    for (const auto& p : probe_args) extra.push_back(parse_probe(p));

    const solver::Waveforms waves = solver::run_transient(circuit, tstep, tstop, extra);
    write_output(opts, solver::waveforms_to_csv(waves, opts.banner()));
    for (const auto& w : waves.warnings) std::cerr << "warning: " << w << '\n';
    return waves.truncated ? 2 : 0;
}

int cmd_truthtable_gate(const std::string& gate_name, const std::string& bias_path,
                        const std::string& jjfet_card, const std::string& ntron_card,
                        const CommonOptions& opts) {
    const logic::GateKind kind = parse_gate_kind(gate_name);
    const GateCards cards = load_gate_cards(jjfet_card, ntron_card);
    const logic::BiasLibrary biases = logic::bias_library_from_json(read_file(bias_path));

    const logic::BuiltGate gate =
        logic::build_gate(kind, make_models(cards), biases, cards.ntron);
    netlist::ElaborationOptions eopts;
    eopts.card_search_paths = opts.card_paths;
    const netlist::Circuit circuit = netlist::elaborate(gate.ast, eopts);

    const logic::TruthTableReport report = logic::truth_table(
        circuit, gate.inputs, gate.output, {},
        [kind](const std::vector<bool>& in) { return logic::gate_truth(kind, in); },
        logic::to_string(kind));

    write_output(opts, logic::truth_table_to_json(report, opts.banner()));
    return report.overall_pass ? 0 : 3;
}

int cmd_truthtable_netlist(const std::string& netlist_path,
                           const std::vector<std::string>& inputs,
                           const std::string& output, const std::string& expect,
                           const CommonOptions& opts) {
    if (inputs.empty() || output.empty() || expect.empty()) {
        throw Error("netlist truth tables need --inputs, --output and --expect");
    }
    const netlist::Circuit circuit = load_circuit(netlist_path, opts);

    logic::BoolFunction expected;
    if (const auto kind = logic::gate_kind_from_string(expect)) {
        if (logic::gate_input_count(*kind) != static_cast<int>(inputs.size())) {
            throw Error("--expect " + expect + " wants " +
                        std::to_string(logic::gate_input_count(*kind)) + " inputs");
        }
        expected = [kind](const std::vector<bool>& in) {
            return logic::gate_truth(*kind, in);
        };
    } else {
        const std::size_t rows = std::size_t{1} << inputs.size();
        if (expect.size() != rows ||
            expect.find_first_not_of("01") != std::string::npos) {
            throw Error("--expect must be a gate kind or a " + std::to_string(rows) +
                        "-bit truth string");
        }
        expected = [expect, n = inputs.size()](const std::vector<bool>& in) {
            std::size_t code = 0;
            for (std::size_t k = 0; k < n; ++k) {
                code = (code << 1) | (in[k] ? 1u : 0u);
            }
            return expect[code] == '1';
        };
    }

    const logic::TruthTableReport report = logic::truth_table(
        circuit, inputs, output, {}, expected, fs::path(netlist_path).stem().string());
    write_output(opts, logic::truth_table_to_json(report, opts.banner()));
    return report.overall_pass ? 0 : 3;
}

int cmd_tune(const std::string& gate_name, const std::string& jjfet_card,
             const std::string& ntron_card, const std::string& margin, int points,
             const CommonOptions& opts) {
    const logic::GateKind kind = parse_gate_kind(gate_name);
    const GateCards cards = load_gate_cards(jjfet_card, ntron_card);

    logic::TuneSettings settings;
    settings.margin = parse_amount(margin, "--margin");
    settings.points_per_axis = points;

    const logic::TuneResult result =
        logic::tune_gate(kind, cards.jjfet, cards.ntron, make_models(cards), settings);
    write_output(opts, logic::tune_result_to_json(result, opts.banner()));
    return result.feasible ? 0 : 4;
}

int cmd_emit_gate(const std::string& gate_name, const std::string& bias_path,
                  const std::string& jjfet_card, const std::string& ntron_card,
                  const CommonOptions& opts) {
    const logic::GateKind kind = parse_gate_kind(gate_name);
    const GateCards cards = load_gate_cards(jjfet_card, ntron_card);
    const logic::BiasLibrary biases = logic::bias_library_from_json(read_file(bias_path));
    const logic::BuiltGate gate =
        logic::build_gate(kind, make_models(cards), biases, cards.ntron);

    std::string text;
    if (!opts.no_banner) text += "# " + std::string(kVersion) + "\n";
    text += netlist::print(gate.ast);
    write_output(opts, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compact-model circuit simulator for JJFET/nTron cryogenic logic"};
    app.require_subcommand(1);

    CommonOptions common;
    std::string netlist_path;
    std::string gate_name;
    std::string bias_path;
    std::string jjfet_card;
    std::string ntron_card;
    std::string output_node;
    std::string expect;
    std::vector<std::string> inputs;
    std::vector<std::string> probe_args;
    std::string step;
    std::string stop;
    std::string margin = "0.5u";
    int points = 25;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--card", common.card_paths,
                        "extra device-card search directory (repeatable)");
        cmd->add_option("-o,--out", common.out_path, "write output to file");
        cmd->add_flag("--no-banner", common.no_banner,
                      "suppress the version header in outputs");
    };

    CLI::App* op = app.add_subcommand("op", "DC operating point (JSON)");
    op->add_option("netlist", netlist_path, "netlist file")->required();
    add_common(op);

    CLI::App* tran = app.add_subcommand("tran", "quasi-static transient sweep (CSV)");
    tran->add_option("netlist", netlist_path, "netlist file")->required();
    tran->add_option("--step", step, "timestep in seconds (SI suffixes accepted)");
    tran->add_option("--stop", stop, "stop time in seconds (SI suffixes accepted)");
    tran->add_option("--probe", probe_args, "extra probe, e.g. v(out) (repeatable)");
    add_common(tran);

    CLI::App* tt = app.add_subcommand("truthtable", "exhaustive gate verification (JSON)");
    tt->add_option("netlist", netlist_path, "netlist file (alternative to --gate)");
    tt->add_option("--gate", gate_name, "generated gate kind");
    tt->add_option("--bias", bias_path, "bias library JSON (from tune)");
    tt->add_option("--jjfet-card", jjfet_card, "JJFET card file");
    tt->add_option("--ntron-card", ntron_card, "nTron card file");
    tt->add_option("--inputs", inputs, "input node names (netlist mode)")
        ->delimiter(',');
    tt->add_option("--output", output_node, "output node name (netlist mode)");
    tt->add_option("--expect", expect,
                   "expected function: gate kind or truth bit string (netlist mode)");
    add_common(tt);

    CLI::App* tune = app.add_subcommand("tune", "bias grid search (JSON)");
    tune->add_option("--gate", gate_name, "gate kind")->required();
    tune->add_option("--jjfet-card", jjfet_card, "JJFET card file")->required();
    tune->add_option("--ntron-card", ntron_card, "nTron card file")->required();
    tune->add_option("--margin", margin,
                     "required gate-current clearance in amperes (SI suffixes accepted)");
    tune->add_option("--points", points, "grid points per axis");
    add_common(tune);

    CLI::App* emit = app.add_subcommand("emit-gate", "print a tuned gate netlist");
    emit->add_option("--gate", gate_name, "gate kind")->required();
    emit->add_option("--bias", bias_path, "bias library JSON (from tune)")->required();
    emit->add_option("--jjfet-card", jjfet_card, "JJFET card file")->required();
    emit->add_option("--ntron-card", ntron_card, "nTron card file")->required();
    add_common(emit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (op->parsed()) return cmd_op(netlist_path, common);
        if (tran->parsed()) return cmd_tran(netlist_path, step, stop, probe_args, common);
        if (tt->parsed()) {
            if (!gate_name.empty()) {
                if (bias_path.empty() || jjfet_card.empty() || ntron_card.empty()) {
                    throw Error("--gate mode needs --bias, --jjfet-card and --ntron-card");
                }
                return cmd_truthtable_gate(gate_name, bias_path, jjfet_card, ntron_card,
                                           common);
            }
            if (netlist_path.empty()) {
                throw Error("truthtable needs --gate <kind> or a netlist file");
            }
            return cmd_truthtable_netlist(netlist_path, inputs, output_node, expect,
                                          common);
        }
        if (tune->parsed()) {
            return cmd_tune(gate_name, jjfet_card, ntron_card, margin, points, common);
        }
        if (emit->parsed()) {
            return cmd_emit_gate(gate_name, bias_path, jjfet_card, ntron_card, common);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
