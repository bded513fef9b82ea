#include "jjsim/devices/lookup_table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jjsim/errors.hpp"

namespace jjsim::devices {

LookupTable1D::LookupTable1D(std::vector<Point> breakpoints)
    : points_(std::move(breakpoints)) {
    if (points_.size() < 2) {
        throw InvalidTableError("lookup table needs at least 2 breakpoints, got " +
                                std::to_string(points_.size()));
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& [x, y] = points_[i];
        if (!std::isfinite(x) || !std::isfinite(y)) {
            throw InvalidTableError("non-finite breakpoint at index " + std::to_string(i));
        }
        if (y <= 0.0) {
            throw InvalidTableError("breakpoint y must be > 0, got " + std::to_string(y) +
                                    " at index " + std::to_string(i));
        }
        if (i > 0 && points_[i - 1].first >= x) {
            throw InvalidTableError("breakpoint x values must be strictly increasing "
                                    "(index " + std::to_string(i) + ")");
        }
    }
}

double LookupTable1D::eval(double x) const {
    // the negated comparison also routes NaN to the low clamp
    if (!(x > points_.front().first)) return points_.front().second;
    if (x >= points_.back().first) return points_.back().second;

    auto hi = std::upper_bound(points_.begin(), points_.end(), x,
                               [](double v, const Point& p) { return v < p.first; });
    auto lo = hi - 1;
    const double t = (x - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
}

bool LookupTable1D::is_non_increasing() const {
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (points_[i].second > points_[i - 1].second) return false;
    }
    return true;
}

}  // namespace jjsim::devices
