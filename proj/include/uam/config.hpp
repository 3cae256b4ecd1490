// config.hpp - flat key = value run configuration with [section] blocks,
// line-precise diagnostics, and a canonical resolved-config echo.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "uam/sim.hpp"

namespace uam {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputConfig {
    std::string dir = "out";
    std::string telemetry = "telemetry.csv";
    std::string metrics = "metrics.txt";
    std::string weights = "";  // empty disables the weight dump
    long weights_every = 100;  // ticks between weight rows
};

struct MetricsConfig {
    double window_start = 5.0;  // s, start of the error-statistics window
};

struct RunConfig {
    SimSetup setup;
    OutputConfig output;
    MetricsConfig metrics;
};

// Missing keys fall back to the built-in defaults; an empty file yields the
// stock gain set. Unknown sections/keys, type errors and range violations
// are reported with file:line.
RunConfig load_config(const std::string& path);
RunConfig parse_config(std::istream& in, const std::string& name);

// canonical echo; parse_config(write_config(c)) == c
void write_config(const RunConfig& cfg, std::ostream& out);

}  // namespace uam
