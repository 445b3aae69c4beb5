#pragma once

// Stochastic money-exchange baselines: random binary interactions that
// conserve total money, for statistical comparison with the lattice.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cmlecon/sample.hpp"

namespace cmlecon::exchange {

enum class Variant {
    DY,                  ///< both agents pool and split at random
    ANGLE,               ///< agent i loses a random fraction of eps*omega
    ANGLE_HETEROGENEOUS, ///< per-agent omega_i
};

struct ExchangeRule {
    Variant variant = Variant::DY;
    std::optional<double> omega;                        ///< ANGLE only, in (0,1)
    std::optional<std::vector<double>> omega_per_agent; ///< ANGLE_HETEROGENEOUS; drawn
                                                        ///< from the run seed when absent

    /// Throws ConfigError when the fields do not match the variant or n.
    void validate(std::size_t n) const;
};

/// Wealth vector plus the cached conserved total.
struct ExchangeState {
    std::vector<double> money;
    double total = 0.0;
    std::uint64_t rng_seed = 0;
};

/// Pool-and-split: (ui, uj) -> (eps*(ui+uj), (1-eps)*(ui+uj)).
/// eps must lie strictly in (0,1); inputs must be finite and >= 0.
std::pair<double, double> dy_exchange(double ui, double uj, double eps);

/// Directed transfer du = eps*omega*ui from i to j. eps, omega in (0,1).
std::pair<double, double> angle_exchange(double ui, double uj, double eps, double omega);

/// Runs `transactions` random binary interactions from an all-equal initial
/// state (1.0 per agent). Pairs (i, j), i != j, are drawn uniformly with a
/// fresh eps per transaction. Deterministic in (n, rule, transactions, seed).
/// Verifies money conservation to relative 1e-9 before returning.
WealthSample run(std::size_t n, const ExchangeRule& rule, std::uint64_t transactions,
                 std::uint64_t seed);

} // namespace cmlecon::exchange
