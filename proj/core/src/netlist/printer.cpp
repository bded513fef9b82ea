#include "jjsim/netlist/printer.hpp"

#include <cstdio>
#include <sstream>

namespace jjsim::netlist {
namespace {

void print_element(std::ostringstream& out, const Element& el, const char* indent) {
    out << indent << el.name;
    for (const auto& n : el.nodes) out << ' ' << n;
    switch (el.kind) {
        case ElementKind::Resistor:
            out << ' ' << format_number(el.value);
            break;
        case ElementKind::CurrentSource:
        case ElementKind::VoltageSource: {
            const auto& w = *el.waveform;
            if (w.kind == SourceWaveform::Kind::Dc) {
                out << " DC " << format_number(w.dc_value);
            } else {
                out << " PULSE(" << format_number(w.pulse.low) << ' '
                    << format_number(w.pulse.high) << ' ' << format_number(w.pulse.delay)
                    << ' ' << format_number(w.pulse.rise) << ' '
                    << format_number(w.pulse.fall) << ' ' << format_number(w.pulse.width)
                    << ' ' << format_number(w.pulse.period) << ')';
            }
            break;
        }
        case ElementKind::Jjfet:
        case ElementKind::Ntron:
        case ElementKind::Instance:
            out << ' ' << el.model;
            break;
    }
    out << '\n';
}

}  // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string print(const NetlistAst& ast) {
    std::ostringstream out;

    for (const auto& m : ast.models) {
        out << ".model " << m.name << ' '
            << (m.device == DeviceKind::Jjfet ? "JJFET" : "NTRON") << " card=\""
            << m.card_path << '"';
        for (const auto& [key, value] : m.overrides) {
            out << ' ' << key << '=' << format_number(value);
        }
        out << '\n';
    }

    for (const auto& s : ast.subckts) {
        out << ".subckt " << s.name;
        for (const auto& p : s.ports) out << ' ' << p;
        out << '\n';
        for (const auto& el : s.body) print_element(out, el, "  ");
        out << ".ends\n";
    }

    for (const auto& el : ast.elements) print_element(out, el, "");

    switch (ast.analysis.kind) {
        case AnalysisSpec::Kind::None:
            break;
        case AnalysisSpec::Kind::Op:
            out << ".op\n";
            break;
        case AnalysisSpec::Kind::Tran:
            out << ".tran " << format_number(ast.analysis.step) << ' '
                << format_number(ast.analysis.stop) << '\n';
            break;
    }

    if (!ast.probes.empty()) {
        out << ".print";
        for (const auto& p : ast.probes) out << ' ' << p.label();
        out << '\n';
    }

    return out.str();
}

}  // namespace jjsim::netlist
