#pragma once

// Distributional statistics over wealth samples: histograms, exponential and
// Pareto maximum-likelihood fits, Gini coefficient, regime classification.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cmlecon/sample.hpp"

namespace cmlecon::stats {

enum class Binning { LINEAR, LOG };

/// Bin layout: `bins` equal (or log-equal) divisions of [lo, hi].
struct BinSpec {
    Binning binning = Binning::LINEAR;
    double lo = 0.0;
    double hi = 1.0;
    std::size_t bins = 64;
};

struct Histogram {
    std::vector<double> edges; ///< strictly increasing, counts.size() + 1
    std::vector<std::uint64_t> counts;
    Binning binning = Binning::LINEAR;
    std::uint64_t below = 0; ///< samples < edges.front()
    std::uint64_t above = 0; ///< samples > edges.back()

    std::uint64_t in_range() const noexcept;
};

/// Bins are half-open [e_k, e_{k+1}); the last bin includes its upper edge.
Histogram histogram(const WealthSample& sample, const BinSpec& spec);
Histogram histogram(const WealthSample& sample, std::vector<double> edges, Binning binning);

enum class FitKind { EXPONENTIAL, PARETO };

std::string_view to_string(FitKind kind) noexcept;

struct FitResult {
    FitKind kind = FitKind::EXPONENTIAL;
    std::optional<double> mu;        ///< exponential rate
    std::optional<double> h;         ///< temperature, defined as 1/mu
    std::optional<double> alpha;     ///< Pareto density exponent (> 1)
    std::optional<double> alpha_bar; ///< cumulative exponent, alpha - 1
    double xmin = 0.0;               ///< fit support lower bound
    double ks_distance = 0.0;        ///< KS distance of the tail vs the fitted law
    std::size_t n_tail = 0;          ///< samples with x >= xmin
};

/// Maximum-likelihood exponential fit on the shifted tail x >= xmin:
/// mu = 1 / mean(x - xmin). Throws InsufficientDataError (< 10 tail samples)
/// or DegenerateFitError (zero-variance tail).
FitResult fit_exponential(const WealthSample& sample, double xmin);

/// Hill estimator on the tail x >= xmin > 0:
/// alpha = 1 + n_tail / sum(ln(x/xmin)). Errors as fit_exponential, plus
/// DomainError for xmin <= 0 and DegenerateFitError when every tail sample
/// equals xmin.
FitResult fit_pareto(const WealthSample& sample, double xmin);

/// Gini coefficient in [0, 1) via the sorted O(n log n) form
/// G = 2*sum(i * x_(i)) / (n * sum x) - (n+1)/n  (1-based ascending ranks).
/// Throws UndefinedGiniError when the mean is zero.
double gini(const WealthSample& sample);
double gini(std::span<const double> values); ///< same, on raw non-negative values

/// Arithmetic mean and population standard deviation.
std::pair<double, double> mean_std(const WealthSample& sample);
std::pair<double, double> mean_std(std::span<const double> values);

/// Order statistic at quantile q in [0, 1], linear interpolation.
double quantile(const WealthSample& sample, double q);

enum class Regime { BOLTZMANN_GIBBS, PARETO, COLLAPSED, UNCLASSIFIED };

std::string_view to_string(Regime regime) noexcept;

struct ClassifierConfig {
    double collapse_mean = 1e-6; ///< mean below this is a collapsed state
    /// Both candidate laws are fit above this quantile, so their KS distances
    /// are comparable. 0.90 keeps enough tail points that pooled (spatially
    /// correlated) lattice samples stay under ks_accept for the matching law.
    double tail_quantile = 0.90;
    double ks_accept = 0.05; ///< largest KS distance accepted as a fit
    double ks_margin = 0.01; ///< required gap between the two KS distances
};

struct Classification {
    Regime label = Regime::UNCLASSIFIED;
    std::optional<FitResult> exponential; ///< tail fit, when it succeeded
    std::optional<FitResult> pareto;      ///< tail fit, when it succeeded
};

/// COLLAPSED below the mean threshold; otherwise both laws are fit on the
/// configured tail and the smaller KS distance wins when it is accepted and
/// beats the other by more than the margin; UNCLASSIFIED otherwise.
Classification classify_regime(const WealthSample& sample, const ClassifierConfig& config = {});

/// Least-squares slope diagnostics on binned data (plot-fit fidelity checks;
/// the MLE fits above are the estimators of record).
struct RegressionFit {
    double exponent = 0.0; ///< mu for exponential, alpha for Pareto
    double intercept = 0.0;
    std::size_t bins_used = 0;
};

/// ln(count) vs bin center on a LINEAR histogram; exponent is the decay rate.
RegressionFit regress_exponential(const Histogram& hist);

/// ln(count/width) vs ln(geometric bin center) on a LOG histogram; exponent
/// is the power-law density exponent.
RegressionFit regress_pareto(const Histogram& hist);

} // namespace cmlecon::stats
