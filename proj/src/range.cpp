#include "cmlecon/range.hpp"

#include <cmath>

namespace cmlecon {

std::vector<double> Range::values() const {
    std::vector<double> out;
    if (!(step > 0.0) || hi < lo) {
        return out;
    }
    // count grid points, admitting hi itself within a small relative slack
    const double span = hi - lo;
    const auto count = static_cast<std::size_t>(std::floor(span / step + 1e-9)) + 1;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(lo + static_cast<double>(k) * step);
    }
    return out;
}

} // namespace cmlecon
