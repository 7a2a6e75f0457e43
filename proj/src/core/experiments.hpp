#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace slln {

// Materialized experiment run: CSV artifact on disk, printable summary,
// and the verdict of the experiment's own pass rule. Runs with the same
// config and seed produce byte-identical CSV files.
struct ExperimentOutcome {
    bool pass = true;
    std::string csv_path;
    std::vector<std::string> summary;
};

ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

} // namespace slln
