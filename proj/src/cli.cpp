#include "cmlecon/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmlecon/errors.hpp"
#include "cmlecon/exchange.hpp"
#include "cmlecon/io.hpp"
#include "cmlecon/lattice.hpp"
#include "cmlecon/ricker.hpp"
#include "cmlecon/stats.hpp"
#include "cmlecon/sweep.hpp"
#include "cmlecon/version.hpp"

namespace cmlecon::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const std::optional<double>& v) {
    if (v) {
        return *v;
    }
    return nullptr;
}

ordered_json fit_to_json(const stats::FitResult& fit) {
    ordered_json j;
    j["kind"] = std::string(stats::to_string(fit.kind));
    j["mu"] = to_json(fit.mu);
    j["h"] = to_json(fit.h);
    j["alpha"] = to_json(fit.alpha);
    j["alpha_bar"] = to_json(fit.alpha_bar);
    j["xmin"] = fit.xmin;
    j["ks_distance"] = fit.ks_distance;
    j["n_tail"] = fit.n_tail;
    return j;
}

ordered_json fit_to_json(const std::optional<stats::FitResult>& fit) {
    if (fit) {
        return fit_to_json(*fit);
    }
    return nullptr;
}

// Collects named file contents, then writes everything (plus manifest.json)
// atomically into the output directory.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

    void add(std::string name, std::string content) {
        files_.emplace_back(std::move(name), std::move(content));
    }

    void finalize(const std::string& command, const std::string& command_line,
                  ordered_json config, std::uint64_t base_seed, double duration_seconds) {
        std::filesystem::create_directories(dir_);
        ordered_json outputs = ordered_json::array();
        for (const auto& [name, content] : files_) {
            io::write_file_atomic(dir_ / name, content);
            outputs.push_back({{"file", name},
                               {"bytes", content.size()},
                               {"digest_fnv1a64", io::fnv1a64_hex(content)}});
        }
        ordered_json manifest;
        manifest["artifact"] = "cmlecon";
        manifest["version"] = std::string(kVersion);
        manifest["command"] = command;
        manifest["command_line"] = command_line;
        manifest["config"] = std::move(config);
        manifest["base_seed"] = base_seed;
        manifest["duration_seconds"] = duration_seconds;
        manifest["outputs"] = std::move(outputs);
        io::write_file_atomic(dir_ / "manifest.json", manifest.dump(2) + "\n");
    }

private:
    std::filesystem::path dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

struct Analysis {
    stats::Classification cls;
    std::optional<stats::FitResult> full_exponential; // MLE over the whole sample
    std::optional<stats::FitResult> pareto_top5;      // Hill above the 95th percentile
    stats::Histogram hist_linear;
    std::optional<stats::Histogram> hist_log;
    std::optional<double> regression_mu;
    std::optional<double> regression_alpha;
};

Analysis analyze(const WealthSample& sample) {
    Analysis a;
    a.cls = stats::classify_regime(sample);
    if (a.cls.label != stats::Regime::COLLAPSED) {
        try {
            a.full_exponential = stats::fit_exponential(sample, 0.0);
        } catch (const Error&) {
        }
        try {
            a.pareto_top5 = stats::fit_pareto(sample, stats::quantile(sample, 0.95));
        } catch (const Error&) {
        }
    }

    double max_value = 0.0;
    double min_positive = 0.0;
    for (const double v : sample.values()) {
        max_value = std::max(max_value, v);
        if (v > 0.0 && (min_positive == 0.0 || v < min_positive)) {
            min_positive = v;
        }
    }
    const double hi = max_value > 0.0 ? max_value : 1.0;
    a.hist_linear = stats::histogram(
        sample, stats::BinSpec{stats::Binning::LINEAR, 0.0, hi, 100});
    if (min_positive > 0.0 && min_positive < max_value) {
        a.hist_log = stats::histogram(
            sample, stats::BinSpec{stats::Binning::LOG, min_positive, max_value, 64});
    }

    try {
        a.regression_mu = stats::regress_exponential(a.hist_linear).exponent;
    } catch (const Error&) {
    }
    // slope diagnostic for the power-law reading is taken on the tail, where
    // such a line would be fit on a log-log plot
    const double tail_lo = stats::quantile(sample, 0.90);
    if (tail_lo > 0.0 && tail_lo < max_value) {
        try {
            const stats::Histogram tail_hist = stats::histogram(
                sample, stats::BinSpec{stats::Binning::LOG, tail_lo, max_value, 24});
            a.regression_alpha = stats::regress_pareto(tail_hist).exponent;
        } catch (const Error&) {
        }
    }
    return a;
}

ordered_json fit_json(const Analysis& a) {
    ordered_json j;
    j["label"] = std::string(stats::to_string(a.cls.label));
    const stats::FitResult* chosen = nullptr;
    if (a.cls.label == stats::Regime::BOLTZMANN_GIBBS && a.full_exponential) {
        chosen = &*a.full_exponential;
    } else if (a.cls.label == stats::Regime::PARETO) {
        chosen = a.pareto_top5 ? &*a.pareto_top5 : (a.cls.pareto ? &*a.cls.pareto : nullptr);
    }
    if (chosen) {
        j["kind"] = std::string(stats::to_string(chosen->kind));
        j["mu"] = to_json(chosen->mu);
        j["h"] = to_json(chosen->h);
        j["alpha"] = to_json(chosen->alpha);
        j["alpha_bar"] = to_json(chosen->alpha_bar);
        j["xmin"] = chosen->xmin;
        j["ks_distance"] = chosen->ks_distance;
        j["n_tail"] = chosen->n_tail;
    } else {
        j["kind"] = nullptr;
        j["mu"] = nullptr;
        j["h"] = nullptr;
        j["alpha"] = nullptr;
        j["alpha_bar"] = nullptr;
        j["xmin"] = nullptr;
        j["ks_distance"] = nullptr;
        j["n_tail"] = nullptr;
    }
    j["candidates"] = {{"exponential_full", fit_to_json(a.full_exponential)},
                       {"pareto_top5", fit_to_json(a.pareto_top5)},
                       {"classifier_tail_exponential", fit_to_json(a.cls.exponential)},
                       {"classifier_tail_pareto", fit_to_json(a.cls.pareto)}};
    ordered_json diag;
    diag["regression_mu"] = to_json(a.regression_mu);
    diag["regression_mu_log10"] =
        a.regression_mu ? ordered_json(*a.regression_mu / std::numbers::ln10) : nullptr;
    diag["regression_alpha"] = to_json(a.regression_alpha);
    j["diagnostics"] = std::move(diag);
    return j;
}

ordered_json stats_json(double mean, double std_dev, const std::optional<double>& gini,
                        const Analysis& a) {
    ordered_json j;
    j["mean"] = mean;
    j["std"] = std_dev;
    j["gini"] = to_json(gini);
    j["h"] = a.full_exponential ? to_json(a.full_exponential->h) : ordered_json(nullptr);
    j["label"] = std::string(stats::to_string(a.cls.label));
    return j;
}

void add_sample_outputs(OutputSet& outs, const WealthSample& sample, const Analysis& a) {
    outs.add("sample.csv", io::sample_csv(sample.values()));
    outs.add("hist_linear.csv", io::histogram_csv(a.hist_linear));
    outs.add("hist_log.csv", a.hist_log ? io::histogram_csv(*a.hist_log)
                                        : std::string("bin_lo,bin_hi,count\n"));
    outs.add("fit.json", fit_json(a).dump(2) + "\n");
}

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 2;
}

int internal_error(const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int cmd_simulate(const SimulateOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    try {
        sweep::ProtocolConfig config;
        config.n = options.n;
        config.transient = options.transient;
        config.measure_iters = options.measure_iters;
        config.realizations = options.realizations;
        config.base_seed = options.seed;
        config.snapshot_only = options.snapshot_only;
        config.threads = options.threads;
        config.validate();

        const lattice::ModelParams params{.r = lattice::ParamField(options.r),
                                          .a = lattice::ParamField(options.a)};
        params.check(options.n);

        const sweep::ProtocolResult result = sweep::run_protocol(params, config);
        const Analysis a = analyze(result.pooled);

        OutputSet outs(options.out_dir);
        add_sample_outputs(outs, result.pooled, a);
        outs.add("stats.json",
                 stats_json(result.scalars.mean, result.scalars.std_dev, result.scalars.gini, a)
                         .dump(2) +
                     "\n");

        ordered_json cfg{{"a", options.a},
                         {"r", options.r},
                         {"n", options.n},
                         {"transient", options.transient},
                         {"measure_iters", options.measure_iters},
                         {"realizations", options.realizations},
                         {"seed", options.seed},
                         {"snapshot_only", options.snapshot_only},
                         {"threads", options.threads},
                         {"out_dir", options.out_dir}};
        outs.finalize("simulate", options.command_line, std::move(cfg), options.seed,
                      seconds_since(start));

        std::cout << "simulate: label=" << stats::to_string(a.cls.label)
                  << " mean=" << result.scalars.mean;
        if (a.full_exponential) {
            std::cout << " mu=" << *a.full_exponential->mu;
        }
        if (a.pareto_top5) {
            std::cout << " alpha=" << *a.pareto_top5->alpha;
        }
        std::cout << " pooled=" << result.pooled.size() << " -> " << options.out_dir << "\n";
        return 0;
    } catch (const ConfigError& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        return internal_error(e);
    }
}

int cmd_sweep(const SweepOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    try {
        sweep::ProtocolConfig config;
        config.n = options.n;
        config.transient = options.transient;
        config.measure_iters = options.measure_iters;
        config.realizations = options.realizations;
        config.base_seed = options.seed;
        config.snapshot_only = options.snapshot_only;
        config.threads = options.threads;
        config.validate();

        const std::vector<double> a_values = options.a_range.values();
        const std::vector<double> r_values = options.r_range.values();
        if (a_values.empty() || r_values.empty()) {
            throw ConfigError("sweep: empty a or r range");
        }

        const sweep::PhaseDiagram diagram = sweep::sweep_grid(a_values, r_values, config);

        OutputSet outs(options.out_dir);
        outs.add("phase.csv", io::phase_csv(diagram));

        ordered_json cfg{{"a_range", {{"lo", options.a_range.lo},
                                      {"hi", options.a_range.hi},
                                      {"step", options.a_range.step}}},
                         {"r_range", {{"lo", options.r_range.lo},
                                      {"hi", options.r_range.hi},
                                      {"step", options.r_range.step}}},
                         {"n", options.n},
                         {"transient", options.transient},
                         {"measure_iters", options.measure_iters},
                         {"realizations", options.realizations},
                         {"seed", options.seed},
                         {"snapshot_only", options.snapshot_only},
                         {"threads", options.threads},
                         {"out_dir", options.out_dir}};
        outs.finalize("sweep", options.command_line, std::move(cfg), options.seed,
                      seconds_since(start));

        std::cout << "sweep: " << a_values.size() << "x" << r_values.size() << " cells -> "
                  << options.out_dir << "\n";
        return 0;
    } catch (const ConfigError& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        return internal_error(e);
    }
}

int cmd_bifurcate(const BifurcateOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    try {
        if (options.a == 1.0) {
            throw ConfigError("bifurcate: a = 1 is singular (the damping |1-a| vanishes)");
        }
        if (options.kept < 1) {
            throw ConfigError("bifurcate: kept must be >= 1");
        }
        const std::vector<ricker::Orbit> orbits =
            ricker::bifurcation_scan(options.r_range, options.a, options.transient, options.kept);

        OutputSet outs(options.out_dir);
        outs.add("bifurcation.csv", io::bifurcation_csv(orbits));

        ordered_json cfg{{"a", options.a},
                         {"r_range", {{"lo", options.r_range.lo},
                                      {"hi", options.r_range.hi},
                                      {"step", options.r_range.step}}},
                         {"transient", options.transient},
                         {"kept", options.kept},
                         {"out_dir", options.out_dir}};
        outs.finalize("bifurcate", options.command_line, std::move(cfg), 0, seconds_since(start));

        std::cout << "bifurcate: " << orbits.size() << " r points -> " << options.out_dir << "\n";
        return 0;
    } catch (const ConfigError& e) {
        return usage_error(e.what());
    } catch (const SingularParameterError& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        return internal_error(e);
    }
}

int cmd_exchange(const ExchangeOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    try {
        exchange::ExchangeRule rule;
        if (options.model == "dy") {
            rule.variant = exchange::Variant::DY;
        } else if (options.model == "angle") {
            rule.variant = exchange::Variant::ANGLE;
            if (!options.omega) {
                throw ConfigError("exchange: --omega is required for --model angle");
            }
            rule.omega = options.omega;
        } else if (options.model == "angle-het") {
            rule.variant = exchange::Variant::ANGLE_HETEROGENEOUS;
        } else {
            throw ConfigError("exchange: unknown model '" + options.model +
                              "' (expected dy, angle or angle-het)");
        }
        if (rule.variant != exchange::Variant::ANGLE && options.omega) {
            throw ConfigError("exchange: --omega applies to --model angle only");
        }

        const WealthSample sample =
            exchange::run(options.n, rule, options.transactions, options.seed);
        const Analysis a = analyze(sample);
        const auto [mean, std_dev] = stats::mean_std(sample);
        std::optional<double> g;
        try {
            g = stats::gini(sample);
        } catch (const UndefinedGiniError&) {
        }

        OutputSet outs(options.out_dir);
        add_sample_outputs(outs, sample, a);
        outs.add("stats.json", stats_json(mean, std_dev, g, a).dump(2) + "\n");

        ordered_json cfg{{"model", options.model},
                         {"omega", options.omega ? ordered_json(*options.omega) : nullptr},
                         {"n", options.n},
                         {"transactions", options.transactions},
                         {"seed", options.seed},
                         {"out_dir", options.out_dir}};
        outs.finalize("exchange", options.command_line, std::move(cfg), options.seed,
                      seconds_since(start));

        std::cout << "exchange: model=" << options.model
                  << " label=" << stats::to_string(a.cls.label) << " mean=" << mean << " -> "
                  << options.out_dir << "\n";
        return 0;
    } catch (const ConfigError& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        return internal_error(e);
    }
}

namespace {

std::string join_argv(int argc, const char* const* argv) {
    std::string joined;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) {
            joined += ' ';
        }
        joined += argv[i];
    }
    return joined;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"wealth dynamics on a ring of coupled exponential maps, with "
                 "stochastic exchange baselines"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "INI file supplying defaults; keys live in a [subcommand] section and "
                   "explicit flags win");

    const std::string command_line = join_argv(argc, argv);
    int exit_code = 0;

    SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand("simulate", "lattice protocol at one (a, r) point");
    sim_cmd->add_option("--a", sim.a, "environmental pressure")->capture_default_str();
    sim_cmd->add_option("--r", sim.r, "growth capacity")->capture_default_str();
    sim_cmd->add_option("-n,--agents", sim.n, "system size")->capture_default_str();
    sim_cmd->add_option("--transient", sim.transient, "iterations before measuring")
        ->capture_default_str();
    sim_cmd->add_option("--measure-iters", sim.measure_iters,
                        "post-transient iterations averaged per realization")
        ->capture_default_str();
    sim_cmd->add_option("--realizations", sim.realizations, "independent seeded runs")
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "base seed")->capture_default_str();
    sim_cmd->add_flag("--snapshot-only", sim.snapshot_only,
                      "sample a single snapshot at t = transient");
    sim_cmd->add_option("--threads", sim.threads, "worker threads")->capture_default_str();
    sim_cmd->add_option("--out-dir", sim.out_dir, "output directory")
        ->envname("CMLECON_OUT_DIR")
        ->capture_default_str();
    sim_cmd->callback([&] {
        sim.command_line = command_line;
        exit_code = cmd_simulate(sim);
    });

    SweepOptions swp;
    std::string sweep_a_range = "0:1:0.2";
    std::string sweep_r_range = "1:10:1";
    auto* sweep_cmd = app.add_subcommand("sweep", "phase diagram over an (a, r) grid");
    sweep_cmd->add_option("--a-range", sweep_a_range, "a grid as lo:hi:step (or one value)")
        ->capture_default_str();
    sweep_cmd->add_option("--r-range", sweep_r_range, "r grid as lo:hi:step (or one value)")
        ->capture_default_str();
    sweep_cmd->add_option("-n,--agents", swp.n, "system size")->capture_default_str();
    sweep_cmd->add_option("--transient", swp.transient, "iterations before measuring")
        ->capture_default_str();
    sweep_cmd->add_option("--measure-iters", swp.measure_iters,
                          "post-transient iterations averaged per realization")
        ->capture_default_str();
    sweep_cmd->add_option("--realizations", swp.realizations, "independent seeded runs")
        ->capture_default_str();
    sweep_cmd->add_option("--seed", swp.seed, "base seed")->capture_default_str();
    sweep_cmd->add_flag("--snapshot-only", swp.snapshot_only,
                        "sample a single snapshot at t = transient");
    sweep_cmd->add_option("--threads", swp.threads, "worker threads")->capture_default_str();
    sweep_cmd->add_option("--out-dir", swp.out_dir, "output directory")
        ->envname("CMLECON_OUT_DIR")
        ->capture_default_str();
    sweep_cmd->callback([&] {
        try {
            swp.a_range = io::parse_range(sweep_a_range);
            swp.r_range = io::parse_range(sweep_r_range);
        } catch (const ConfigError& e) {
            exit_code = usage_error(e.what());
            return;
        }
        swp.command_line = command_line;
        exit_code = cmd_sweep(swp);
    });

    BifurcateOptions bif;
    std::string bif_r_range = "0.5:10:0.01";
    auto* bif_cmd = app.add_subcommand("bifurcate", "orbit scan of the scalar map over r");
    bif_cmd->add_option("--a", bif.a, "environmental pressure (a != 1)")->capture_default_str();
    bif_cmd->add_option("--r-range", bif_r_range, "r grid as lo:hi:step (or one value)")
        ->capture_default_str();
    bif_cmd->add_option("--transient", bif.transient, "iterations discarded per r")
        ->capture_default_str();
    bif_cmd->add_option("--kept", bif.kept, "iterates recorded per r")->capture_default_str();
    bif_cmd->add_option("--out-dir", bif.out_dir, "output directory")
        ->envname("CMLECON_OUT_DIR")
        ->capture_default_str();
    bif_cmd->callback([&] {
        try {
            bif.r_range = io::parse_range(bif_r_range);
        } catch (const ConfigError& e) {
            exit_code = usage_error(e.what());
            return;
        }
        bif.command_line = command_line;
        exit_code = cmd_bifurcate(bif);
    });

    ExchangeOptions exc;
    double exc_omega = -1.0;
    auto* exc_cmd = app.add_subcommand("exchange", "stochastic exchange baseline");
    exc_cmd->add_option("--model", exc.model, "dy | angle | angle-het")->capture_default_str();
    auto* omega_opt = exc_cmd->add_option("--omega", exc_omega, "Angle exchange parameter in (0,1)");
    exc_cmd->add_option("-n,--agents", exc.n, "number of agents")->capture_default_str();
    exc_cmd->add_option("--transactions", exc.transactions, "binary interactions to perform")
        ->capture_default_str();
    exc_cmd->add_option("--seed", exc.seed, "run seed")->capture_default_str();
    exc_cmd->add_option("--out-dir", exc.out_dir, "output directory")
        ->envname("CMLECON_OUT_DIR")
        ->capture_default_str();
    exc_cmd->callback([&] {
        if (omega_opt->count() > 0) {
            exc.omega = exc_omega;
        }
        exc.command_line = command_line;
        exit_code = cmd_exchange(exc);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    return exit_code;
}

} // namespace cmlecon::cli
