#include "cmlecon/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cmlecon/errors.hpp"

namespace cmlecon::stats {

std::uint64_t Histogram::in_range() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::string_view to_string(FitKind kind) noexcept {
    return kind == FitKind::EXPONENTIAL ? "EXPONENTIAL" : "PARETO";
}

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::BOLTZMANN_GIBBS: return "BOLTZMANN_GIBBS";
        case Regime::PARETO: return "PARETO";
        case Regime::COLLAPSED: return "COLLAPSED";
        case Regime::UNCLASSIFIED: return "UNCLASSIFIED";
    }
    return "UNCLASSIFIED";
}

namespace {

std::vector<double> build_edges(const BinSpec& spec) {
    if (!(spec.bins >= 1)) {
        throw DomainError("histogram: need at least one bin");
    }
    if (!(std::isfinite(spec.lo) && std::isfinite(spec.hi) && spec.lo < spec.hi)) {
        throw DomainError("histogram: need finite lo < hi");
    }
    if (spec.binning == Binning::LOG && !(spec.lo > 0.0)) {
        throw DomainError("histogram: LOG binning requires a positive lower edge");
    }
    std::vector<double> edges(spec.bins + 1);
    if (spec.binning == Binning::LINEAR) {
        const double width = (spec.hi - spec.lo) / static_cast<double>(spec.bins);
        for (std::size_t k = 0; k <= spec.bins; ++k) {
            edges[k] = spec.lo + width * static_cast<double>(k);
        }
    } else {
        const double ratio = std::log(spec.hi / spec.lo) / static_cast<double>(spec.bins);
        for (std::size_t k = 0; k <= spec.bins; ++k) {
            edges[k] = spec.lo * std::exp(ratio * static_cast<double>(k));
        }
    }
    edges.front() = spec.lo;
    edges.back() = spec.hi;
    return edges;
}

Histogram fill(const WealthSample& sample, std::vector<double> edges, Binning binning) {
    if (edges.size() < 2) {
        throw DomainError("histogram: need at least two edges");
    }
    for (std::size_t k = 1; k < edges.size(); ++k) {
        if (!(edges[k - 1] < edges[k])) {
            throw DomainError("histogram: edges must be strictly increasing");
        }
    }
    if (binning == Binning::LOG && !(edges.front() > 0.0)) {
        throw DomainError("histogram: LOG binning requires a positive lower edge");
    }
    Histogram hist;
    hist.edges = std::move(edges);
    hist.counts.assign(hist.edges.size() - 1, 0);
    hist.binning = binning;
    for (const double v : sample.values()) {
        if (v < hist.edges.front()) {
            ++hist.below;
        } else if (v > hist.edges.back()) {
            ++hist.above;
        } else if (v == hist.edges.back()) {
            ++hist.counts.back(); // last bin closes on the right
        } else {
            const auto it = std::upper_bound(hist.edges.begin(), hist.edges.end(), v);
            ++hist.counts[static_cast<std::size_t>(it - hist.edges.begin()) - 1];
        }
    }
    return hist;
}

// KS distance of a sorted sample against a fitted CDF
template <typename Cdf>
double ks_distance(std::span<const double> sorted, Cdf cdf) {
    const auto m = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        const double hi = static_cast<double>(i + 1) / m - f;
        const double lo = f - static_cast<double>(i) / m;
        d = std::max({d, hi, lo});
    }
    return d;
}

std::vector<double> sorted_tail(const WealthSample& sample, double xmin, const char* who) {
    std::vector<double> tail;
    for (const double v : sample.values()) {
        if (v >= xmin) {
            tail.push_back(v);
        }
    }
    if (tail.size() < 10) {
        throw InsufficientDataError(std::string(who) + ": fewer than 10 samples above xmin");
    }
    std::sort(tail.begin(), tail.end());
    return tail;
}

} // namespace

Histogram histogram(const WealthSample& sample, const BinSpec& spec) {
    return fill(sample, build_edges(spec), spec.binning);
}

Histogram histogram(const WealthSample& sample, std::vector<double> edges, Binning binning) {
    return fill(sample, std::move(edges), binning);
}

FitResult fit_exponential(const WealthSample& sample, double xmin) {
    if (!(std::isfinite(xmin) && xmin >= 0.0)) {
        throw DomainError("fit_exponential: xmin must be finite and >= 0");
    }
    const std::vector<double> tail = sorted_tail(sample, xmin, "fit_exponential");
    if (tail.back() == tail.front()) {
        throw DegenerateFitError("fit_exponential: zero-variance tail");
    }
    double sum = 0.0;
    for (const double v : tail) {
        sum += v - xmin;
    }
    const double mean_excess = sum / static_cast<double>(tail.size());
    if (!(mean_excess > 0.0)) {
        throw DegenerateFitError("fit_exponential: tail has no excess above xmin");
    }
    FitResult fit;
    fit.kind = FitKind::EXPONENTIAL;
    fit.mu = 1.0 / mean_excess;
    fit.h = 1.0 / *fit.mu;
    fit.xmin = xmin;
    fit.n_tail = tail.size();
    const double mu = *fit.mu;
    fit.ks_distance =
        ks_distance(tail, [mu, xmin](double x) { return 1.0 - std::exp(-mu * (x - xmin)); });
    return fit;
}

FitResult fit_pareto(const WealthSample& sample, double xmin) {
    if (!(std::isfinite(xmin) && xmin > 0.0)) {
        throw DomainError("fit_pareto: xmin must be finite and > 0");
    }
    const std::vector<double> tail = sorted_tail(sample, xmin, "fit_pareto");
    double log_sum = 0.0;
    for (const double v : tail) {
        log_sum += std::log(v / xmin);
    }
    if (!(log_sum > 0.0)) {
        throw DegenerateFitError("fit_pareto: every tail sample equals xmin");
    }
    FitResult fit;
    fit.kind = FitKind::PARETO;
    fit.alpha = 1.0 + static_cast<double>(tail.size()) / log_sum;
    fit.alpha_bar = *fit.alpha - 1.0;
    fit.xmin = xmin;
    fit.n_tail = tail.size();
    const double abar = *fit.alpha_bar;
    fit.ks_distance =
        ks_distance(tail, [abar, xmin](double x) { return 1.0 - std::pow(xmin / x, abar); });
    return fit;
}

double gini(std::span<const double> values) {
    if (values.empty()) {
        throw DomainError("gini: empty sample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    double rank_weighted = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        sum += sorted[i];
        rank_weighted += static_cast<double>(i + 1) * sorted[i];
    }
    if (!(sum > 0.0)) {
        throw UndefinedGiniError("gini: zero total wealth");
    }
    const auto n = static_cast<double>(sorted.size());
    return 2.0 * rank_weighted / (n * sum) - (n + 1.0) / n;
}

double gini(const WealthSample& sample) {
    return gini(std::span<const double>(sample.values()));
}

std::pair<double, double> mean_std(std::span<const double> values) {
    if (values.empty()) {
        throw DomainError("mean_std: empty sample");
    }
    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    const double mean = sum / n;
    double sq = 0.0;
    for (const double v : values) {
        sq += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(sq / n)};
}

std::pair<double, double> mean_std(const WealthSample& sample) {
    return mean_std(std::span<const double>(sample.values()));
}

double quantile(const WealthSample& sample, double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw DomainError("quantile: q must lie in [0,1]");
    }
    std::vector<double> sorted = sample.values();
    std::sort(sorted.begin(), sorted.end());
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

Classification classify_regime(const WealthSample& sample, const ClassifierConfig& config) {
    Classification out;
    const auto [mean, sd] = mean_std(sample);
    (void)sd;
    if (mean < config.collapse_mean) {
        out.label = Regime::COLLAPSED;
        return out;
    }
    const double xmin = quantile(sample, config.tail_quantile);
    try {
        out.exponential = fit_exponential(sample, xmin);
    } catch (const Error&) {
    }
    try {
        out.pareto = fit_pareto(sample, xmin);
    } catch (const Error&) {
    }

    if (out.exponential && out.pareto) {
        const double ks_e = out.exponential->ks_distance;
        const double ks_p = out.pareto->ks_distance;
        if (std::min(ks_e, ks_p) > config.ks_accept) {
            out.label = Regime::UNCLASSIFIED;
        } else if (std::fabs(ks_e - ks_p) <= config.ks_margin) {
            out.label = Regime::UNCLASSIFIED;
        } else {
            out.label = ks_e < ks_p ? Regime::BOLTZMANN_GIBBS : Regime::PARETO;
        }
    } else if (out.exponential && out.exponential->ks_distance <= config.ks_accept) {
        out.label = Regime::BOLTZMANN_GIBBS;
    } else if (out.pareto && out.pareto->ks_distance <= config.ks_accept) {
        out.label = Regime::PARETO;
    } else {
        out.label = Regime::UNCLASSIFIED;
    }
    return out;
}

namespace {

RegressionFit regress(const std::vector<double>& xs, const std::vector<double>& ys) {
    const auto m = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) {
        throw DegenerateFitError("regression: degenerate abscissae");
    }
    const double slope = (m * sxy - sx * sy) / denom;
    return RegressionFit{.exponent = slope, .intercept = (sy - slope * sx) / m,
                         .bins_used = xs.size()};
}

} // namespace

RegressionFit regress_exponential(const Histogram& hist) {
    if (hist.binning != Binning::LINEAR) {
        throw DomainError("regress_exponential: expects a LINEAR histogram");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t k = 0; k < hist.counts.size(); ++k) {
        if (hist.counts[k] > 0) {
            xs.push_back(0.5 * (hist.edges[k] + hist.edges[k + 1]));
            ys.push_back(std::log(static_cast<double>(hist.counts[k])));
        }
    }
    if (xs.size() < 3) {
        throw InsufficientDataError("regress_exponential: fewer than 3 occupied bins");
    }
    RegressionFit fit = regress(xs, ys);
    fit.exponent = -fit.exponent; // decay rate
    return fit;
}

RegressionFit regress_pareto(const Histogram& hist) {
    if (hist.binning != Binning::LOG) {
        throw DomainError("regress_pareto: expects a LOG histogram");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t k = 0; k < hist.counts.size(); ++k) {
        if (hist.counts[k] > 0) {
            const double lo = hist.edges[k];
            const double hi = hist.edges[k + 1];
            xs.push_back(0.5 * (std::log(lo) + std::log(hi)));
            ys.push_back(std::log(static_cast<double>(hist.counts[k]) / (hi - lo)));
        }
    }
    if (xs.size() < 3) {
        throw InsufficientDataError("regress_pareto: fewer than 3 occupied bins");
    }
    RegressionFit fit = regress(xs, ys);
    fit.exponent = -fit.exponent; // density exponent
    return fit;
}

} // namespace cmlecon::stats
