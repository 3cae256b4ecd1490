// harness.hpp - executes one configured run end to end: resolved-config
// echo, telemetry CSV, optional weight dump, metrics file.
#pragma once

#include <string>

#include "uam/config.hpp"
#include "uam/metrics.hpp"

namespace uam {

struct RunOutcome {
    MetricsReport metrics;
    int exit_code = 0;      // 0 ok, 3 divergence
    std::string error;      // diagnostic when exit_code != 0
    std::string telemetry_path;
    std::string metrics_path;
};

RunOutcome run_experiment(const RunConfig& cfg);

}  // namespace uam
