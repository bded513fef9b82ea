#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jjsim::netlist {

enum class ElementKind {
    Resistor,
    CurrentSource,
    VoltageSource,
    Jjfet,
    Ntron,
    Instance,
};

enum class DeviceKind { Jjfet, Ntron };

/// Seven-field pulse: low level, high level, delay, rise, fall, width, period.
/// Transitions are linear ramps; the pulse repeats with the given period.
struct PulseSpec {
    double low = 0.0;
    double high = 0.0;
    double delay = 0.0;
    double rise = 0.0;
    double fall = 0.0;
    double width = 0.0;
    double period = 0.0;

    bool operator==(const PulseSpec&) const = default;
};

struct SourceWaveform {
    enum class Kind { Dc, Pulse };

    Kind kind = Kind::Dc;
    double dc_value = 0.0;
    PulseSpec pulse;

    static SourceWaveform dc(double value) {
        SourceWaveform w;
        w.dc_value = value;
        return w;
    }

    /// Source level at time t (volts or amperes depending on the element).
    double value_at(double t) const;

    /// Enforces rise, fall > 0, width >= 0, period >= rise + width + fall.
    void validate() const;

    bool operator==(const SourceWaveform&) const = default;
};

/// One netlist element line. Unused fields stay at their defaults for kinds
/// they do not apply to (e.g. `value` is only meaningful for resistors).
struct Element {
    std::string name;  ///< as written, e.g. "R1", "Xinv"; first letter fixes the kind
    ElementKind kind = ElementKind::Resistor;
    std::vector<std::string> nodes;
    double value = 0.0;                      ///< resistor ohms
    std::string model;                       ///< J/N model name or X subcircuit name
    std::optional<SourceWaveform> waveform;  ///< I/V sources

    bool operator==(const Element&) const = default;
};

/// `.model <name> JJFET|NTRON card="<path>" [param=value ...]`
/// Inline attributes override scalar params from the card.
struct ModelDef {
    std::string name;
    DeviceKind device = DeviceKind::Jjfet;
    std::string card_path;
    std::map<std::string, double> overrides;

    bool operator==(const ModelDef&) const = default;
};

struct SubcktDef {
    std::string name;
    std::vector<std::string> ports;
    std::vector<Element> body;

    bool operator==(const SubcktDef&) const = default;
};

struct AnalysisSpec {
    enum class Kind { None, Op, Tran };

    Kind kind = Kind::None;
    double step = 0.0;  ///< seconds, Tran only
    double stop = 0.0;  ///< seconds, Tran only

    bool operator==(const AnalysisSpec&) const = default;
};

struct Probe {
    enum class Kind { NodeVoltage, ElementCurrent };

    Kind kind = Kind::NodeVoltage;
    std::string target;

    /// Canonical label, e.g. "v(out)" or "i(RS)"; used as CSV column header.
    std::string label() const;

    bool operator==(const Probe&) const = default;
};

struct NetlistAst {
    std::vector<ModelDef> models;
    std::vector<SubcktDef> subckts;
    std::vector<Element> elements;
    AnalysisSpec analysis;
    std::vector<Probe> probes;

    bool operator==(const NetlistAst&) const = default;
};

}  // namespace jjsim::netlist
