#pragma once

// Command implementations behind the cmlecon executable. Each command writes
// its result files plus a manifest.json into the output directory and returns
// a process exit code.

#include <cstdint>
#include <optional>
#include <string>

#include "cmlecon/range.hpp"

namespace cmlecon::cli {

struct SimulateOptions {
    double a = 0.6;
    double r = 4.0;
    std::size_t n = 10'000;
    std::uint64_t transient = 10'000;
    std::uint64_t measure_iters = 100;
    std::size_t realizations = 10;
    std::uint64_t seed = 1;
    bool snapshot_only = false;
    unsigned threads = 1;
    std::string out_dir = "out";
    std::string command_line; ///< recorded in the manifest when launched via run_cli
};

struct SweepOptions {
    Range a_range{0.0, 1.0, 0.2};
    Range r_range{1.0, 10.0, 1.0};
    std::size_t n = 1'000;
    std::uint64_t transient = 1'000;
    std::uint64_t measure_iters = 100;
    std::size_t realizations = 10;
    std::uint64_t seed = 1;
    bool snapshot_only = false;
    unsigned threads = 1;
    std::string out_dir = "out";
    std::string command_line;
};

struct BifurcateOptions {
    double a = 0.0;
    Range r_range{0.5, 10.0, 0.01};
    std::uint64_t transient = 1'000;
    std::size_t kept = 256;
    std::string out_dir = "out";
    std::string command_line;
};

struct ExchangeOptions {
    std::string model = "dy"; ///< dy | angle | angle-het
    std::optional<double> omega;
    std::size_t n = 10'000;
    std::uint64_t transactions = 10'000'000;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::string command_line;
};

int cmd_simulate(const SimulateOptions& options);
int cmd_sweep(const SweepOptions& options);
int cmd_bifurcate(const BifurcateOptions& options);
int cmd_exchange(const ExchangeOptions& options);

/// Full argv entry point used by the executable.
int run_cli(int argc, const char* const* argv);

} // namespace cmlecon::cli
