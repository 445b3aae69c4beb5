#include "cmlecon/exchange.hpp"

#include <cmath>
#include <string>

#include "cmlecon/errors.hpp"
#include "cmlecon/rng.hpp"

namespace cmlecon::exchange {

namespace {

void require_money(double ui, double uj) {
    if (!(std::isfinite(ui) && ui >= 0.0) || !(std::isfinite(uj) && uj >= 0.0)) {
        throw DomainError("exchange: money must be finite and non-negative");
    }
}

void require_unit_open(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
        throw DomainError(std::string("exchange: ") + name + " must lie strictly in (0,1)");
    }
}

} // namespace

void ExchangeRule::validate(std::size_t n) const {
    switch (variant) {
        case Variant::DY:
            if (omega || omega_per_agent) {
                throw ConfigError("exchange rule: DY takes no omega");
            }
            break;
        case Variant::ANGLE:
            if (!omega) {
                throw ConfigError("exchange rule: ANGLE requires omega");
            }
            if (omega_per_agent) {
                throw ConfigError("exchange rule: ANGLE takes a single omega");
            }
            if (!(*omega > 0.0 && *omega < 1.0)) {
                throw ConfigError("exchange rule: omega must lie strictly in (0,1)");
            }
            break;
        case Variant::ANGLE_HETEROGENEOUS:
            if (omega) {
                throw ConfigError("exchange rule: heterogeneous variant has per-agent omega only");
            }
            if (omega_per_agent) {
                if (omega_per_agent->size() != n) {
                    throw ConfigError("exchange rule: omega_per_agent must have one entry per agent");
                }
                for (const double w : *omega_per_agent) {
                    if (!(w > 0.0 && w < 1.0)) {
                        throw ConfigError("exchange rule: every omega_i must lie strictly in (0,1)");
                    }
                }
            }
            break;
    }
}

std::pair<double, double> dy_exchange(double ui, double uj, double eps) {
    require_money(ui, uj);
    require_unit_open(eps, "eps");
    const double pot = ui + uj;
    return {eps * pot, (1.0 - eps) * pot};
}

std::pair<double, double> angle_exchange(double ui, double uj, double eps, double omega) {
    require_money(ui, uj);
    require_unit_open(eps, "eps");
    require_unit_open(omega, "omega");
    const double du = eps * omega * ui;
    return {ui - du, uj + du};
}

WealthSample run(std::size_t n, const ExchangeRule& rule, std::uint64_t transactions,
                 std::uint64_t seed) {
    if (n < 2) {
        throw ConfigError("exchange run: need at least 2 agents");
    }
    rule.validate(n);

    ExchangeState state{.money = std::vector<double>(n, 1.0),
                        .total = static_cast<double>(n),
                        .rng_seed = seed};

    // per-agent omegas for the heterogeneous variant, drawn from a stream
    // separate from the transaction stream
    std::vector<double> omegas;
    if (rule.variant == Variant::ANGLE_HETEROGENEOUS) {
        if (rule.omega_per_agent) {
            omegas = *rule.omega_per_agent;
        } else {
            rng::Engine gen(rng::derive_seed(seed, 1));
            omegas.resize(n);
            for (double& w : omegas) {
                w = gen.uniform(0.1, 0.9);
            }
        }
    }

    rng::Engine gen(rng::derive_seed(seed, 0));
    const double omega = rule.omega.value_or(0.0);
    for (std::uint64_t t = 0; t < transactions; ++t) {
        const auto i = static_cast<std::size_t>(gen.below(n));
        auto j = static_cast<std::size_t>(gen.below(n - 1));
        if (j >= i) ++j;
        const double eps = gen.uniform01();
        double& ui = state.money[i];
        double& uj = state.money[j];
        switch (rule.variant) {
            case Variant::DY: {
                const double pot = ui + uj;
                ui = eps * pot;
                uj = (1.0 - eps) * pot;
                break;
            }
            case Variant::ANGLE: {
                const double du = eps * omega * ui;
                ui -= du;
                uj += du;
                break;
            }
            case Variant::ANGLE_HETEROGENEOUS: {
                const double du = eps * omegas[i] * ui;
                ui -= du;
                uj += du;
                break;
            }
        }
    }

    double total = 0.0;
    for (const double u : state.money) {
        total += u;
    }
    const double rel_drift = std::fabs(total - state.total) / state.total;
    if (!(rel_drift < 1e-9)) {
        throw Error("exchange run: money conservation violated, relative drift " +
                    std::to_string(rel_drift));
    }

    SampleMeta meta;
    switch (rule.variant) {
        case Variant::DY: meta.model = "exchange-dy"; break;
        case Variant::ANGLE: meta.model = "exchange-angle"; break;
        case Variant::ANGLE_HETEROGENEOUS: meta.model = "exchange-angle-het"; break;
    }
    if (rule.omega) {
        meta.params["omega"] = *rule.omega;
    }
    meta.params["transactions"] = static_cast<double>(transactions);
    meta.params["conservation_rel_drift"] = rel_drift;
    meta.n_agents = n;
    meta.seeds = {seed};
    return WealthSample(std::move(state.money), std::move(meta));
}

} // namespace cmlecon::exchange
