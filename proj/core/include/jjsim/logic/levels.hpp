#pragma once

namespace jjsim::logic {

/// Voltage rails and classification thresholds. Logic '0' sits at -0.7 V,
/// logic '1' at 0 V; the guard band between low_max and high_min classifies
/// as X so marginal outputs are detectable.
struct LogicLevels {
    double v_low = -0.7;
    double v_high = 0.0;
    double low_max = -0.5;
    double high_min = -0.2;

    void validate() const;  // v_low < low_max < high_min < v_high
};

enum class LogicValue { Zero, One, X };

LogicValue classify_level(double v, const LogicLevels& levels = {});

constexpr char to_char(LogicValue v) {
    switch (v) {
        case LogicValue::Zero: return '0';
        case LogicValue::One: return '1';
        case LogicValue::X: return 'X';
    }
    return '?';
}

}  // namespace jjsim::logic
