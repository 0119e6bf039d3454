#pragma once

#include "hodgelab/config.hpp"
#include "hodgelab/report.hpp"

namespace hodgelab {

// Runs the experiment selected by cfg.experiment and collects every check,
// table, and summary datum into a report.  Tolerances come from the config
// with the defaults documented in the README; nothing is written to disk.
ExperimentReport runExperiment(const RunConfig& cfg);

} // namespace hodgelab
