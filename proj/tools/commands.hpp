#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wire.hpp"

namespace cmvkit::cli {

enum ExitCode : int
{
    exit_ok         = 0,
    exit_schema     = 2,
    exit_numeric    = 3,
    exit_nosolution = 4,
    exit_capability = 5,
};

struct Options
{
    Tolerances tol;
    std::uint64_t seed = ExtensionOptions{}.seed;
    std::optional<double> phase;
    std::vector<Complex> at;   ///< charfun evaluation points
    int grid = 0;              ///< charfun grid resolution per axis
};

struct Outcome
{
    int exit_code = exit_ok;
    json body;
};

const std::vector<std::string>& command_names();

/// Validates `input` against the command's schema and runs it. Never throws
/// for library errors; they become exit codes with an error object.
Outcome run_command(const std::string& name, const json& input, const Options& opts);

/// Error object for failures outside a command (argument parsing, I/O).
json error_object(const std::string& kind, const std::string& message, const std::string& path = "");

} // namespace cmvkit::cli
