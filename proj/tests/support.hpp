#pragma once

// Test-side oracles, independent of the library's estimators: direct
// inverse-CDF samplers for known laws and the O(n^2) pairwise Gini.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "cmlecon/rng.hpp"

namespace testsupport {

/// i.i.d. draws from Exp(rate) via inverse CDF.
inline std::vector<double> sample_exponential(std::size_t n, double rate, std::uint64_t seed) {
    cmlecon::rng::Engine gen(seed);
    std::vector<double> out(n);
    for (double& v : out) {
        v = -std::log(1.0 - gen.uniform01()) / rate;
    }
    return out;
}

/// i.i.d. draws from a Pareto law with density exponent alpha (> 1) and
/// support [xmin, inf): survival (x/xmin)^-(alpha-1), inverted directly.
inline std::vector<double> sample_pareto(std::size_t n, double alpha, double xmin,
                                         std::uint64_t seed) {
    cmlecon::rng::Engine gen(seed);
    std::vector<double> out(n);
    for (double& v : out) {
        v = xmin * std::pow(gen.uniform01(), -1.0 / (alpha - 1.0));
    }
    return out;
}

/// Pairwise-definition Gini: sum |xi - xj| / (2 n^2 mean). O(n^2).
inline double gini_pairwise(std::span<const double> values) {
    const auto n = static_cast<double>(values.size());
    double abs_diff_sum = 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum += values[i];
        for (std::size_t j = 0; j < values.size(); ++j) {
            abs_diff_sum += std::fabs(values[i] - values[j]);
        }
    }
    return abs_diff_sum / (2.0 * n * n * (sum / n));
}

} // namespace testsupport
