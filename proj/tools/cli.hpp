#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sngs/model.hpp"
#include "sngs/scaling.hpp"

namespace sngs::cli {

enum class Command { solve, sweep, limits, spectrum, check };

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailed = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitUsage = 64;

struct RunConfig {
    Command command = Command::solve;
    ModelParams params;
    std::vector<double> lambdas;  // sweep, limits
    GridSpec grid;
    double tol = 1e-10;
    int k_max = 3;
    std::size_t num_eigs = 4;
    std::size_t starts = 0;  // solve: optional uniqueness scan
    std::uint64_t seed = 0;
    std::string out;
    bool force = false;
    Side side = Side::zero;
    std::vector<std::string> argv;
    std::optional<std::string> help;  // set when --help was requested
};

// Tokens exclude the program name. Throws UsageError, InvalidExponent, BadRange.
RunConfig parse_args(const std::vector<std::string>& tokens);

// Parses "start:stop:log|lin:count" or a comma list. Throws BadRange.
std::vector<double> parse_lambdas(const std::string& spec);

// solve: writes <out>.csv (r,u,v) and <out>.json.
int run_solve(const RunConfig& config);
// sweep, limits, spectrum, check.
int run_analysis(const RunConfig& config);

// Full entry point: parse, dispatch, map errors to exit codes.
int run(const std::vector<std::string>& tokens);

}  // namespace sngs::cli
