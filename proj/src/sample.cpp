#include "cmlecon/sample.hpp"

#include <cmath>

#include "cmlecon/errors.hpp"

namespace cmlecon {

WealthSample::WealthSample(std::vector<double> values, SampleMeta meta)
    : values_(std::move(values)), meta_(std::move(meta)) {
    if (values_.empty()) {
        throw DomainError("WealthSample: empty value set");
    }
    for (const double v : values_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DomainError("WealthSample: values must be finite and non-negative");
        }
    }
}

} // namespace cmlecon
