#include "cmlecon/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "cmlecon/errors.hpp"
#include "cmlecon/rng.hpp"

namespace cmlecon::sweep {

namespace {

// Runs fn(i) for i in [0, total) on `threads` workers. Work items are
// independent; results must be written to index-addressed slots so the
// outcome does not depend on scheduling.
void parallel_for_index(std::size_t total, unsigned threads,
                        const std::function<void(std::size_t)>& fn) {
    threads = std::max(1u, threads);
    if (threads == 1 || total <= 1) {
        for (std::size_t i = 0; i < total; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= total) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

} // namespace

void ProtocolConfig::validate() const {
    if (n < 2) {
        throw ConfigError("protocol: n must be >= 2");
    }
    if (measure_iters < 1) {
        throw ConfigError("protocol: measure_iters must be >= 1");
    }
    if (realizations < 1) {
        throw ConfigError("protocol: realizations must be >= 1");
    }
    if (!(std::isfinite(init_lo) && std::isfinite(init_hi)) || init_lo < 0.0 ||
        !(init_lo < init_hi)) {
        throw ConfigError("protocol: initial interval must satisfy 0 <= lo < hi");
    }
}

std::uint64_t realization_seed(std::uint64_t base_seed, std::size_t k) {
    return rng::derive_seed(base_seed, k);
}

std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t a_index, std::size_t r_index) {
    return rng::derive_seed(rng::derive_seed(base_seed, a_index), r_index);
}

namespace {

struct RealizationStats {
    double mean = 0.0;
    double std_dev = 0.0;
    double gini = 0.0;
    bool gini_defined = false;
};

} // namespace

ProtocolResult run_protocol(const lattice::ModelParams& params, const ProtocolConfig& config) {
    config.validate();
    params.check(config.n);

    const std::size_t n = config.n;
    std::vector<double> pooled(n * config.realizations);
    std::vector<RealizationStats> per_real(config.realizations);
    std::vector<std::uint64_t> seeds(config.realizations);
    for (std::size_t k = 0; k < config.realizations; ++k) {
        seeds[k] = realization_seed(config.base_seed, k);
    }

    parallel_for_index(config.realizations, config.threads, [&](std::size_t k) {
        lattice::LatticeState state = lattice::init_random(n, config.init_lo, config.init_hi, seeds[k]);
        state = lattice::run(std::move(state), params, config.transient);
        std::copy(state.wealth.begin(), state.wealth.end(), pooled.begin() + static_cast<std::ptrdiff_t>(k * n));

        if (config.snapshot_only) {
            return;
        }
        RealizationStats acc;
        std::size_t gini_count = 0;
        std::vector<double> buf(n);
        for (std::uint64_t it = 0; it < config.measure_iters; ++it) {
            if (!lattice::step_into(state.wealth, params, buf)) {
                throw DomainError("run_protocol: overflow to non-finite wealth");
            }
            state.wealth.swap(buf);
            ++state.time;
            const auto [mean, sd] = stats::mean_std(std::span<const double>(state.wealth));
            acc.mean += mean;
            acc.std_dev += sd;
            try {
                acc.gini += stats::gini(std::span<const double>(state.wealth));
                ++gini_count;
            } catch (const UndefinedGiniError&) {
            }
        }
        const auto iters = static_cast<double>(config.measure_iters);
        acc.mean /= iters;
        acc.std_dev /= iters;
        if (gini_count == config.measure_iters) {
            acc.gini /= iters;
            acc.gini_defined = true;
        }
        per_real[k] = acc;
    });

    SampleMeta meta;
    meta.model = "lattice";
    if (params.a.uniform()) {
        meta.params["a"] = params.a.at(0);
    }
    if (params.r.uniform()) {
        meta.params["r"] = params.r.at(0);
    }
    meta.n_agents = n;
    meta.seeds = seeds;
    meta.sample_times = {config.transient};
    WealthSample sample(std::move(pooled), std::move(meta));

    ScalarStats scalars;
    if (config.snapshot_only) {
        const auto [mean, sd] = stats::mean_std(sample);
        scalars.mean = mean;
        scalars.std_dev = sd;
        try {
            scalars.gini = stats::gini(sample);
        } catch (const UndefinedGiniError&) {
        }
    } else {
        const auto reals = static_cast<double>(config.realizations);
        bool gini_defined = true;
        double gini_sum = 0.0;
        for (const RealizationStats& s : per_real) {
            scalars.mean += s.mean;
            scalars.std_dev += s.std_dev;
            gini_sum += s.gini;
            gini_defined = gini_defined && s.gini_defined;
        }
        scalars.mean /= reals;
        scalars.std_dev /= reals;
        if (gini_defined) {
            scalars.gini = gini_sum / reals;
        }
    }
    return ProtocolResult{.pooled = std::move(sample), .scalars = scalars};
}

const CellResult& PhaseDiagram::cell(std::size_t a_index, std::size_t r_index) const {
    return cells.at(a_index * r_values.size() + r_index);
}

CellResult evaluate_cell(double a, double r, const ProtocolConfig& config,
                         const stats::ClassifierConfig& classifier) {
    CellResult cell;
    cell.a = a;
    cell.r = r;
    try {
        const lattice::ModelParams params{.r = lattice::ParamField(r), .a = lattice::ParamField(a)};
        const ProtocolResult result = run_protocol(params, config);
        cell.n_pooled = result.pooled.size();
        cell.mean = result.scalars.mean;
        cell.std_dev = result.scalars.std_dev;
        cell.gini = result.scalars.gini;

        const stats::Classification cls = stats::classify_regime(result.pooled, classifier);
        cell.label = cls.label;
        if (cls.label != stats::Regime::COLLAPSED) {
            try {
                const stats::FitResult fit = stats::fit_exponential(result.pooled, 0.0);
                cell.mu = fit.mu;
                cell.h = fit.h;
            } catch (const Error&) {
            }
            try {
                const double xmin = stats::quantile(result.pooled, 0.95);
                cell.alpha = stats::fit_pareto(result.pooled, xmin).alpha;
            } catch (const Error&) {
            }
        }
    } catch (const std::exception& e) {
        cell.error = e.what();
        cell.label = stats::Regime::UNCLASSIFIED;
    }
    return cell;
}

PhaseDiagram sweep_grid(std::span<const double> a_values, std::span<const double> r_values,
                        const ProtocolConfig& config, const stats::ClassifierConfig& classifier) {
    if (a_values.empty() || r_values.empty()) {
        throw ConfigError("sweep_grid: a and r value sets must be non-empty");
    }
    config.validate();

    PhaseDiagram diagram;
    diagram.a_values.assign(a_values.begin(), a_values.end());
    diagram.r_values.assign(r_values.begin(), r_values.end());
    diagram.config = config;
    diagram.cells.resize(a_values.size() * r_values.size());

    ProtocolConfig cell_config = config;
    cell_config.threads = 1; // parallelism is across cells

    parallel_for_index(diagram.cells.size(), config.threads, [&](std::size_t idx) {
        const std::size_t ai = idx / r_values.size();
        const std::size_t ri = idx % r_values.size();
        ProtocolConfig local = cell_config;
        local.base_seed = cell_seed(config.base_seed, ai, ri);
        diagram.cells[idx] = evaluate_cell(a_values[ai], r_values[ri], local, classifier);
    });
    return diagram;
}

} // namespace cmlecon::sweep
