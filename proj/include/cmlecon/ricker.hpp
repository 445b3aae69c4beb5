#pragma once

// Scalar reduction of the homogeneous ring: the Ricker-type map
// x -> r * x * exp(-|1-a| * x), its fixed point, stability and bifurcations.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cmlecon/range.hpp"

namespace cmlecon::ricker {

/// Growth capacity r > 0, pressure a >= 0, and the derived damping c = |1-a|.
struct MapParams {
    double r;
    double a;
    double c;

    MapParams(double r, double a);
};

/// One application: r * x * exp(-c * x). Throws DomainError for x < 0 or
/// non-finite x.
double step(double x, const MapParams& params);

/// Change of variable y = c * x that removes a from the map, conjugating it
/// to y -> r * y * exp(-y). Throws SingularParameterError when a = 1.
double to_generic(double x, const MapParams& params);

/// Positive fixed point ln(r) / c. Requires r > 1 (else NoFixedPointError)
/// and a != 1 (else SingularParameterError).
double fixed_point(const MapParams& params);

/// Derivative of the map at the fixed point: 1 - ln(r), independent of a.
/// Crosses -1 (flip bifurcation) at r = e^2. Same preconditions as
/// fixed_point.
double multiplier(const MapParams& params);

/// `step` composed `steps` times.
double iterate(double x, const MapParams& params, std::uint64_t steps);

/// Post-transient iterates of one parameter point.
struct Orbit {
    std::vector<double> samples;
    MapParams params;
    std::uint64_t transient = 0;
    std::size_t kept = 0;
};

/// Iterates the map at one parameter point: discards `transient` steps, then
/// records `kept`. x_init defaults to half the fixed point (0.5 when r <= 1).
Orbit orbit(const MapParams& params, std::uint64_t transient, std::size_t kept,
            std::optional<double> x_init = {});

/// Orbit per r over the range, at fixed a != 1. Suitable for a bifurcation
/// diagram.
std::vector<Orbit> bifurcation_scan(const Range& r_range, double a,
                                    std::uint64_t transient = 1000, std::size_t kept = 256,
                                    std::optional<double> x_init = {});

/// Smallest period p <= max_period under which the samples repeat cyclically
/// within rel_tol; nullopt when aperiodic at this resolution.
std::optional<std::size_t> detect_period(std::span<const double> samples,
                                         std::size_t max_period = 64, double rel_tol = 1e-9);

/// Locates the flip bifurcation by bisecting multiplier(r) = -1 on
/// [r_lo, r_hi] (requires a sign change of multiplier + 1 over the bracket).
double find_flip_onset(double r_lo, double r_hi, double tol = 1e-9);

} // namespace cmlecon::ricker
