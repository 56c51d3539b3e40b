// scenarios.hpp — Named experiment runners behind the CLI: each consumes a
// parsed configuration, produces a deterministic CSV dataset (plus an
// optional key-value summary), and returns the computed rows for in-process
// consumers.

#pragma once

#include <string>
#include <vector>

#include "relatherm/config.hpp"
#include "relatherm/dynamics.hpp"
#include "relatherm/types.hpp"

namespace relatherm {

struct RunOptions {
    std::string output_dir;  // prepended to the configured output path
    int threads{1};
    long seed{0};
};

struct ScenarioResult {
    std::string scenario;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> cells;  // formatted exactly as written
    std::string csv;                              // full dataset text
    std::string csv_path;                         // where it was written
    std::string summary;                          // empty when the scenario has none
    std::string summary_path;
    std::vector<Trajectory> trajectories;         // evolution scenarios only

    double number(std::size_t row, const std::string& column) const;
    const std::string& text(std::size_t row, const std::string& column) const;
    std::size_t rows() const { return cells.size(); }
};

// Dispatch on the configured scenario; writes output files and returns the
// dataset. Throws ConfigError for schema problems, the library's numeric
// errors otherwise.
ScenarioResult run_scenario(const Config& config, const RunOptions& options = {});

// Process exit code for an error raised by run_scenario.
int exit_code_for(const std::exception& error);

}  // namespace relatherm
