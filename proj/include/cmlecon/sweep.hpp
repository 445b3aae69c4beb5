#pragma once

// Measurement protocol orchestration: seeded realizations of the lattice,
// pooled snapshots for distribution fits, two-level averaged scalar
// statistics, and (a, r) grid sweeps.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmlecon/lattice.hpp"
#include "cmlecon/sample.hpp"
#include "cmlecon/stats.hpp"

namespace cmlecon::sweep {

struct ProtocolConfig {
    std::size_t n = 10'000;            ///< system size
    double init_lo = 1.0;              ///< initial wealth interval
    double init_hi = 100.0;
    std::uint64_t transient = 10'000;  ///< iterations discarded before measuring
    std::uint64_t measure_iters = 100; ///< post-transient iterations averaged per realization
    std::size_t realizations = 10;
    std::uint64_t base_seed = 1;
    bool snapshot_only = false;        ///< single-time sampling at t = transient
    unsigned threads = 1;              ///< worker threads over realizations / cells

    void validate() const; ///< throws ConfigError on violated bounds
};

/// Scalar measurements; gini is absent when undefined (all-zero states).
struct ScalarStats {
    double mean = 0.0;
    double std_dev = 0.0;
    std::optional<double> gini;
};

struct ProtocolResult {
    WealthSample pooled; ///< snapshots at t = transient, concatenated over realizations
    ScalarStats scalars; ///< two-level averages, or pooled-sample stats when snapshot_only
};

/// Seed of realization k under a protocol base seed.
std::uint64_t realization_seed(std::uint64_t base_seed, std::size_t k);

/// Base seed of grid cell (a_index, r_index) under a sweep base seed.
std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t a_index, std::size_t r_index);

/// Runs the full protocol for one parameter point. Each realization k is
/// seeded with realization_seed(base_seed, k), run through the transient, and
/// its state at t = transient pooled. Unless snapshot_only, mean/std/gini are
/// then computed per iteration over measure_iters further steps, averaged
/// within each realization and then across realizations. Deterministic in the
/// config, independent of `threads`.
ProtocolResult run_protocol(const lattice::ModelParams& params, const ProtocolConfig& config);

struct CellResult {
    double a = 0.0;
    double r = 0.0;
    stats::Regime label = stats::Regime::UNCLASSIFIED;
    std::optional<double> mu;      ///< full-sample exponential MLE rate
    std::optional<double> h;       ///< 1/mu
    std::optional<double> alpha;   ///< Hill exponent on the top-5% tail
    std::optional<double> gini;
    std::optional<double> mean;
    std::optional<double> std_dev;
    std::size_t n_pooled = 0;
    std::optional<std::string> error; ///< per-cell failure, recorded not thrown
};

struct PhaseDiagram {
    std::vector<double> a_values;
    std::vector<double> r_values;
    std::vector<CellResult> cells; ///< a-major, r-minor
    ProtocolConfig config;

    const CellResult& cell(std::size_t a_index, std::size_t r_index) const;
};

/// Evaluates one (a, r) point with the given protocol config (whose base_seed
/// is used as-is) and classifier. Never throws: failures land in `error`.
CellResult evaluate_cell(double a, double r, const ProtocolConfig& config,
                         const stats::ClassifierConfig& classifier = {});

/// One CellResult per (a, r) over the Cartesian product. Cell (i, j) runs
/// under cell_seed(base_seed, i, j), so any cell can be reproduced in
/// isolation. Cells are computed in parallel over `config.threads` workers
/// and aggregated in index order.
PhaseDiagram sweep_grid(std::span<const double> a_values, std::span<const double> r_values,
                        const ProtocolConfig& config,
                        const stats::ClassifierConfig& classifier = {});

} // namespace cmlecon::sweep
