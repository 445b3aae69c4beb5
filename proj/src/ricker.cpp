#include "cmlecon/ricker.hpp"

#include <cmath>
#include <string>

#include "cmlecon/errors.hpp"

namespace cmlecon::ricker {

MapParams::MapParams(double r_in, double a_in) : r(r_in), a(a_in), c(std::fabs(1.0 - a_in)) {
    if (!(std::isfinite(r) && r > 0.0)) {
        throw DomainError("MapParams: r must be finite and > 0");
    }
    if (!(std::isfinite(a) && a >= 0.0)) {
        throw DomainError("MapParams: a must be finite and >= 0");
    }
}

double step(double x, const MapParams& params) {
    if (!std::isfinite(x) || x < 0.0) {
        throw DomainError("ricker step: x must be finite and >= 0");
    }
    return params.r * x * std::exp(-params.c * x);
}

double to_generic(double x, const MapParams& params) {
    if (params.a == 1.0) {
        throw SingularParameterError("to_generic: a = 1 has no generic form (c = 0)");
    }
    return params.c * x;
}

double fixed_point(const MapParams& params) {
    if (params.a == 1.0) {
        throw SingularParameterError("fixed_point: a = 1 is singular");
    }
    if (!(params.r > 1.0)) {
        throw NoFixedPointError("fixed_point: no positive fixed point for r <= 1");
    }
    return std::log(params.r) / params.c;
}

double multiplier(const MapParams& params) {
    if (params.a == 1.0) {
        throw SingularParameterError("multiplier: a = 1 is singular");
    }
    if (!(params.r > 1.0)) {
        throw NoFixedPointError("multiplier: no positive fixed point for r <= 1");
    }
    return 1.0 - std::log(params.r);
}

double iterate(double x, const MapParams& params, std::uint64_t steps) {
    for (std::uint64_t t = 0; t < steps; ++t) {
        x = step(x, params);
    }
    return x;
}

namespace {

double default_x_init(const MapParams& params) {
    if (params.r > 1.0 && params.a != 1.0) {
        return 0.5 * fixed_point(params);
    }
    return 0.5;
}

} // namespace

Orbit orbit(const MapParams& params, std::uint64_t transient, std::size_t kept,
            std::optional<double> x_init) {
    const double x0 = x_init ? *x_init : default_x_init(params);
    if (!(std::isfinite(x0) && x0 > 0.0)) {
        throw DomainError("orbit: x_init must be finite and > 0");
    }
    Orbit out{.samples = {}, .params = params, .transient = transient, .kept = kept};
    out.samples.reserve(kept);
    double x = iterate(x0, params, transient);
    for (std::size_t k = 0; k < kept; ++k) {
        out.samples.push_back(x);
        x = step(x, params);
    }
    return out;
}

std::vector<Orbit> bifurcation_scan(const Range& r_range, double a, std::uint64_t transient,
                                    std::size_t kept, std::optional<double> x_init) {
    if (a == 1.0) {
        throw SingularParameterError("bifurcation_scan: a = 1 is singular");
    }
    std::vector<Orbit> orbits;
    for (const double r : r_range.values()) {
        orbits.push_back(orbit(MapParams(r, a), transient, kept, x_init));
    }
    return orbits;
}

std::optional<std::size_t> detect_period(std::span<const double> samples,
                                         std::size_t max_period, double rel_tol) {
    if (samples.size() < 2) {
        return std::nullopt;
    }
    auto close = [rel_tol](double u, double v) {
        return std::fabs(u - v) <= rel_tol * std::max(std::fabs(u), std::fabs(v));
    };
    const std::size_t limit = std::min(max_period, samples.size() / 2);
    for (std::size_t p = 1; p <= limit; ++p) {
        bool periodic = true;
        for (std::size_t i = 0; i + p < samples.size(); ++i) {
            if (!close(samples[i], samples[i + p])) {
                periodic = false;
                break;
            }
        }
        if (periodic) {
            return p;
        }
    }
    return std::nullopt;
}

double find_flip_onset(double r_lo, double r_hi, double tol) {
    if (!(r_lo > 1.0 && r_hi > r_lo)) {
        throw DomainError("find_flip_onset: need 1 < r_lo < r_hi");
    }
    auto g = [](double r) { return multiplier(MapParams(r, 0.0)) + 1.0; };
    double glo = g(r_lo);
    double ghi = g(r_hi);
    if (glo == 0.0) return r_lo;
    if (ghi == 0.0) return r_hi;
    if ((glo > 0.0) == (ghi > 0.0)) {
        throw DomainError("find_flip_onset: multiplier + 1 does not change sign on the bracket");
    }
    while (r_hi - r_lo > tol) {
        const double mid = 0.5 * (r_lo + r_hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0.0) == (glo > 0.0)) {
            r_lo = mid;
            glo = gm;
        } else {
            r_hi = mid;
        }
    }
    return 0.5 * (r_lo + r_hi);
}

} // namespace cmlecon::ricker
