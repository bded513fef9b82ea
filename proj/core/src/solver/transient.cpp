#include "jjsim/solver/transient.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jjsim/errors.hpp"
#include "jjsim/netlist/printer.hpp"

namespace jjsim::solver {

using netlist::Probe;

const std::vector<double>& Waveforms::series_for(const std::string& label) const {
    for (std::size_t i = 0; i < probe_labels.size(); ++i) {
        if (probe_labels[i] == label) return series[i];
    }
    throw Error("no probe '" + label + "' in waveforms");
}

namespace {

struct ResolvedProbe {
    Probe probe;
    int index = -1;  // node or element index
};

std::vector<ResolvedProbe> resolve_probes(const netlist::Circuit& circuit,
                                          const std::vector<Probe>& extra) {
    std::vector<Probe> all = circuit.probes;
    all.insert(all.end(), extra.begin(), extra.end());
    if (all.empty()) {
        throw Error("transient analysis needs at least one probe "
                    "(.print directive or --probe flag)");
    }

    std::vector<ResolvedProbe> resolved;
    for (const auto& p : all) {
        const bool duplicate = std::any_of(
            resolved.begin(), resolved.end(),
            [&](const ResolvedProbe& r) { return r.probe == p; });
        if (duplicate) continue;

        ResolvedProbe r;
        r.probe = p;
        if (p.kind == Probe::Kind::NodeVoltage) {
            r.index = circuit.node_index(p.target);
            if (r.index < 0) throw Error("probe " + p.label() + ": unknown node");
        } else {
            r.index = circuit.element_index(p.target);
            if (r.index < 0) throw Error("probe " + p.label() + ": unknown element");
        }
        resolved.push_back(std::move(r));
    }
    return resolved;
}

}  // namespace

Waveforms run_transient(const netlist::Circuit& circuit, double step, double stop,
                        const std::vector<Probe>& extra_probes) {
    if (!(step > 0.0)) throw Error("transient step must be > 0");
    if (stop < step) throw Error("transient stop must be >= step");

    const auto probes = resolve_probes(circuit, extra_probes);

    Waveforms waves;
    for (const auto& p : probes) waves.probe_labels.push_back(p.probe.label());
    waves.series.assign(probes.size(), {});

    const int nsteps = static_cast<int>(std::floor(stop / step + 1e-9));
    std::optional<StateVector> warm;
    std::optional<std::vector<double>> warm_v;

    for (int k = 0; k <= nsteps; ++k) {
        const double t = static_cast<double>(k) * step;
        DcOptions opts;
        opts.time = t;
        opts.initial_states = warm;
        opts.initial_voltages = warm_v;
        const Solution sol = solve_dc(circuit, opts);
        if (!sol.converged) {
            waves.truncated = true;
            std::string why = sol.warnings.empty() ? "non-convergent operating point"
                                                   : sol.warnings.front();
            waves.warnings.push_back("transient truncated at t = " +
                                     netlist::format_number(t) + " s: " + why);
            break;
        }
        waves.time.push_back(t);
        for (std::size_t p = 0; p < probes.size(); ++p) {
            const double value =
                probes[p].probe.kind == Probe::Kind::NodeVoltage
                    ? sol.node_voltages[static_cast<std::size_t>(probes[p].index)]
                    : sol.element_currents[static_cast<std::size_t>(probes[p].index)];
            waves.series[p].push_back(value);
        }
        warm = sol.states;
        warm_v = sol.node_voltages;
    }
    return waves;
}

std::string waveforms_to_csv(const Waveforms& waves, const std::string& banner) {
    std::ostringstream out;
    if (!banner.empty()) out << "# " << banner << '\n';
    out << "time";
    for (const auto& label : waves.probe_labels) out << ',' << label;
    out << '\n';
    for (std::size_t k = 0; k < waves.time.size(); ++k) {
        out << netlist::format_number(waves.time[k]);
        for (const auto& s : waves.series) out << ',' << netlist::format_number(s[k]);
        out << '\n';
    }
    return out.str();
}

}  // namespace jjsim::solver
