#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace s1lab {

// Uniform samples values[i] taken at t0 + i*dt.
struct GridFunction {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> values;

    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
    double node(std::int64_t i) const { return t0 + dt * static_cast<double>(i); }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

} // namespace s1lab
