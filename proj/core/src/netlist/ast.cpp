#include "jjsim/netlist/ast.hpp"

#include <cmath>

#include "jjsim/errors.hpp"

namespace jjsim::netlist {

double SourceWaveform::value_at(double t) const {
    if (kind == Kind::Dc) return dc_value;

    double tau = t - pulse.delay;
    if (tau < 0.0) return pulse.low;
    if (pulse.period > 0.0) tau = std::fmod(tau, pulse.period);

    if (tau < pulse.rise) {
        return pulse.low + (pulse.high - pulse.low) * (tau / pulse.rise);
    }
    tau -= pulse.rise;
    if (tau < pulse.width) return pulse.high;
    tau -= pulse.width;
    if (tau < pulse.fall) {
        return pulse.high - (pulse.high - pulse.low) * (tau / pulse.fall);
    }
    return pulse.low;
}

void SourceWaveform::validate() const {
    if (kind == Kind::Dc) return;
    if (pulse.rise <= 0.0 || pulse.fall <= 0.0) {
        throw Error("pulse rise and fall times must be > 0");
    }
    if (pulse.width < 0.0) throw Error("pulse width must be >= 0");
    const double span = pulse.rise + pulse.width + pulse.fall;
    if (pulse.period < span) {
        throw Error("pulse period must cover rise + width + fall");
    }
}

std::string Probe::label() const {
    return (kind == Kind::NodeVoltage ? "v(" : "i(") + target + ")";
}

}  // namespace jjsim::netlist
