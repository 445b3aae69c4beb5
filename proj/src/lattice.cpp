#include "cmlecon/lattice.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "cmlecon/errors.hpp"
#include "cmlecon/rng.hpp"

namespace cmlecon::lattice {

ParamField::ParamField(double value) : values_{value}, stride_(0) {}

ParamField::ParamField(std::vector<double> per_site)
    : values_(std::move(per_site)), stride_(values_.size() == 1 ? 0 : 1) {
    if (values_.empty()) {
        throw DomainError("ParamField: empty per-site values");
    }
}

void ModelParams::check(std::size_t n) const {
    if (!r.uniform() && r.size() != n) {
        throw DomainError("ModelParams: r has " + std::to_string(r.size()) +
                          " entries for " + std::to_string(n) + " sites");
    }
    if (!a.uniform() && a.size() != n) {
        throw DomainError("ModelParams: a has " + std::to_string(a.size()) +
                          " entries for " + std::to_string(n) + " sites");
    }
    for (const double v : r.values()) {
        if (!(std::isfinite(v) && v > 0.0)) {
            throw DomainError("ModelParams: every r must be finite and > 0");
        }
    }
    for (const double v : a.values()) {
        if (!(std::isfinite(v) && v >= 0.0)) {
            throw DomainError("ModelParams: every a must be finite and >= 0");
        }
    }
}

LatticeState::LatticeState(std::vector<double> wealth_in, std::uint64_t time_in)
    : wealth(std::move(wealth_in)), time(time_in) {
    if (wealth.size() < 2) {
        throw DomainError("LatticeState: need at least 2 agents");
    }
    for (const double v : wealth) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DomainError("LatticeState: wealth must be finite and non-negative");
        }
    }
}

double local_field(const LatticeState& state, std::size_t i) {
    const std::size_t n = state.size();
    if (i >= n) {
        throw DomainError("local_field: site index out of range");
    }
    const double left = state.wealth[i == 0 ? n - 1 : i - 1];
    const double right = state.wealth[i == n - 1 ? 0 : i + 1];
    return 0.5 * (left + right);
}

bool step_into(std::span<const double> cur, const ModelParams& params,
               std::span<double> next) noexcept {
    const std::size_t n = cur.size();
    const double* rv = params.r.values().data();
    const double* av = params.a.values().data();
    const std::size_t rs = params.r.uniform() ? 0 : 1;
    const std::size_t as = params.a.uniform() ? 0 : 1;

    auto update = [&](std::size_t i, double left, double right) {
        const double psi = 0.5 * (left + right);
        return rv[i * rs] * cur[i] * std::exp(-std::fabs(cur[i] - av[i * as] * psi));
    };

    next[0] = update(0, cur[n - 1], cur[1]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        next[i] = update(i, cur[i - 1], cur[i + 1]);
    }
    next[n - 1] = update(n - 1, cur[n - 2], cur[0]);

    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
        finite &= std::isfinite(next[i]);
    }
    return finite;
}

namespace {

void require_finite(const LatticeState& state) {
    for (const double v : state.wealth) {
        if (!std::isfinite(v)) {
            throw DomainError("lattice step: non-finite input wealth");
        }
    }
}

} // namespace

LatticeState step(const LatticeState& state, const ModelParams& params) {
    params.check(state.size());
    require_finite(state);
    std::vector<double> next(state.size());
    if (!step_into(state.wealth, params, next)) {
        throw DomainError("lattice step: overflow to non-finite wealth at t=" +
                          std::to_string(state.time + 1));
    }
    LatticeState out(std::move(next), state.time + 1);
    return out;
}

LatticeState run(LatticeState state, const ModelParams& params, std::uint64_t steps) {
    if (steps == 0) {
        return state;
    }
    params.check(state.size());
    require_finite(state);
    std::vector<double> buf(state.size());
    for (std::uint64_t t = 0; t < steps; ++t) {
        if (!step_into(state.wealth, params, buf)) {
            throw DomainError("lattice run: overflow to non-finite wealth at t=" +
                              std::to_string(state.time + 1));
        }
        state.wealth.swap(buf);
        ++state.time;
    }
    return state;
}

LatticeState init_random(std::size_t n, double lo, double hi, std::uint64_t seed) {
    if (n < 2) {
        throw DomainError("init_random: need at least 2 agents");
    }
    if (!(std::isfinite(lo) && std::isfinite(hi)) || lo < 0.0 || !(lo < hi)) {
        throw DomainError("init_random: bounds must satisfy 0 <= lo < hi");
    }
    rng::Engine gen(seed);
    std::vector<double> wealth(n);
    for (double& v : wealth) {
        v = gen.uniform(lo, hi);
    }
    return LatticeState(std::move(wealth), 0);
}

} // namespace cmlecon::lattice
