#pragma once

// Stable serialization: full-precision CSV writers, atomic file output,
// content digests, and range parsing for the CLI.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "cmlecon/range.hpp"
#include "cmlecon/ricker.hpp"
#include "cmlecon/stats.hpp"
#include "cmlecon/sweep.hpp"

namespace cmlecon::io {

/// Full-precision decimal representation that round-trips a double
/// (17 significant digits).
std::string fmt_double(double v);

/// FNV-1a 64-bit content digest, lowercase hex.
std::string fnv1a64_hex(std::string_view bytes);

/// Writes content to a temporary sibling and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Parses "lo:hi:step" or a single value "v" (meaning v:v:1).
/// Throws ConfigError on malformed text, hi < lo, or step <= 0.
Range parse_range(std::string_view text);

// CSV composers. Fixed column order, header row, newline-terminated rows.
std::string sample_csv(std::span<const double> values);
std::string histogram_csv(const stats::Histogram& hist);
std::string phase_csv(const sweep::PhaseDiagram& diagram);
std::string bifurcation_csv(std::span<const ricker::Orbit> orbits);

} // namespace cmlecon::io
