#pragma once

#include <vector>

namespace cmlecon {

/// Inclusive numeric range lo..hi walked with a positive step.
struct Range {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;

    /// Expands to lo, lo+step, ... The upper end is included when it lies on
    /// the step grid (within a small relative tolerance).
    std::vector<double> values() const;
};

} // namespace cmlecon
