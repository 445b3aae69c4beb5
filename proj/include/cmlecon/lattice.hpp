#pragma once

// Deterministic wealth dynamics on a ring of N agents with synchronous
// updates: each site grows by its capacity r and is inhibited exponentially
// by its distance to a times the local field (mean of the two neighbors).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cmlecon::lattice {

/// One parameter over the ring: a single shared value or one value per site.
class ParamField {
public:
    ParamField(double value);                     // NOLINT: implicit by design
    explicit ParamField(std::vector<double> per_site);

    bool uniform() const noexcept { return values_.size() == 1; }
    std::size_t size() const noexcept { return values_.size(); }
    double at(std::size_t i) const noexcept { return values_[i * stride_]; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    std::vector<double> values_;
    std::size_t stride_; // 0 when uniform, 1 when per-site
};

/// Growth capacity r (> 0) and environmental pressure a (>= 0).
struct ModelParams {
    ParamField r;
    ParamField a;

    /// Throws DomainError unless r > 0 and a >= 0 (elementwise) and both
    /// fields are either shared or of length n.
    void check(std::size_t n) const;
};

/// Wealth vector over a ring of N >= 2 agents at iteration `time`.
/// The constructor validates: N >= 2, every value finite and >= 0.
struct LatticeState {
    std::vector<double> wealth;
    std::uint64_t time = 0;

    explicit LatticeState(std::vector<double> wealth, std::uint64_t time = 0);

    std::size_t size() const noexcept { return wealth.size(); }
};

/// Mean wealth of the two ring neighbors of site i (indices wrap).
double local_field(const LatticeState& state, std::size_t i);

/// One synchronous update of every site:
///   x_i' = r_i * x_i * exp(-|x_i - a_i * psi_i|).
/// Reads only the input state (double-buffered); increments time.
/// Throws DomainError on non-finite input wealth or on overflow.
LatticeState step(const LatticeState& state, const ModelParams& params);

/// `step` composed `steps` times; steps = 0 returns the input unchanged.
LatticeState run(LatticeState state, const ModelParams& params, std::uint64_t steps);

/// n independent draws from Uniform(lo, hi), open interval, with a seeded
/// deterministic generator. Identical arguments give bit-identical states.
LatticeState init_random(std::size_t n, double lo, double hi, std::uint64_t seed);

/// Low-level synchronous update: writes the t+1 wealth of `cur` into `next`
/// (same length, distinct storage). Assumes `cur` finite and params checked;
/// returns false if any output is non-finite (overflow).
bool step_into(std::span<const double> cur, const ModelParams& params, std::span<double> next) noexcept;

} // namespace cmlecon::lattice
