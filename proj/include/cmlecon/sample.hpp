#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cmlecon {

/// Provenance of a pooled sample: which model produced it, with what
/// parameters, and from which seeds / sample times.
struct SampleMeta {
    std::string model;
    std::map<std::string, double> params;
    std::size_t n_agents = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<std::uint64_t> sample_times;
};

/// Asymptotic wealth values pooled from one or many realizations.
/// Values are validated on construction: non-empty, finite, non-negative.
class WealthSample {
public:
    explicit WealthSample(std::vector<double> values, SampleMeta meta = {});

    const std::vector<double>& values() const noexcept { return values_; }
    const SampleMeta& meta() const noexcept { return meta_; }
    SampleMeta& meta() noexcept { return meta_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<double> values_;
    SampleMeta meta_;
};

} // namespace cmlecon
