#pragma once

#include <utility>
#include <vector>

namespace jjsim::devices {

/// One-dimensional breakpoint table with piecewise-linear interpolation and
/// clamped (constant) extrapolation outside the covered range.
///
/// Validity is checked once at construction: x strictly increasing, at least
/// two points, every y finite and positive. eval() never fails after that.
class LookupTable1D {
public:
    using Point = std::pair<double, double>;

    LookupTable1D() = default;
    explicit LookupTable1D(std::vector<Point> breakpoints);

    /// Piecewise-linear interpolation; clamps to the end values outside
    /// [x_front, x_back]. Breakpoints reproduce exactly.
    double eval(double x) const;

    /// True when y never increases as x grows (used by nTron cards).
    bool is_non_increasing() const;

    double x_front() const { return points_.front().first; }
    double x_back() const { return points_.back().first; }
    double y_front() const { return points_.front().second; }
    double y_back() const { return points_.back().second; }

    const std::vector<Point>& points() const { return points_; }

private:
    std::vector<Point> points_;
};

}  // namespace jjsim::devices
