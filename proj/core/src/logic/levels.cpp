#include "jjsim/logic/levels.hpp"

#include "jjsim/errors.hpp"

namespace jjsim::logic {

void LogicLevels::validate() const {
    if (!(v_low < low_max && low_max < high_min && high_min < v_high)) {
        throw Error("logic levels must satisfy v_low < low_max < high_min < v_high");
    }
}

LogicValue classify_level(double v, const LogicLevels& levels) {
    if (v <= levels.low_max) return LogicValue::Zero;
    if (v >= levels.high_min) return LogicValue::One;
    return LogicValue::X;
}

}  // namespace jjsim::logic
