#pragma once

#include <string>
#include <vector>

#include "jjsim/netlist/circuit.hpp"
#include "jjsim/solver/dc.hpp"

namespace jjsim::solver {

/// Probed time series. All series share the (strictly increasing) time axis.
struct Waveforms {
    std::vector<double> time;
    std::vector<std::string> probe_labels;
    std::vector<std::vector<double>> series;  ///< [probe][timestep]
    bool truncated = false;
    std::vector<std::string> warnings;

    const std::vector<double>& series_for(const std::string& label) const;
};

/// Quasi-static sweep: one DC operating point per timestep t = 0, step, ...,
/// stop, warm-starting each solve from the previous timestep's device states.
/// Probes come from the circuit's .print directives plus extra_probes. A
/// non-convergent timestep truncates the sweep with a diagnostic warning.
Waveforms run_transient(const netlist::Circuit& circuit, double step, double stop,
                        const std::vector<netlist::Probe>& extra_probes = {});

/// CSV per the waveform interface: header `time,<probe1>,...`, SI units, full
/// double precision. A non-empty banner becomes a leading `# <banner>` line.
std::string waveforms_to_csv(const Waveforms& waves, const std::string& banner = "");

}  // namespace jjsim::solver
