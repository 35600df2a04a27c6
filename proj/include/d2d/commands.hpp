#pragma once

#include <string>
#include <utility>
#include <vector>

#include "d2d/config.hpp"

// Subcommand implementations behind the d2d-offload CLI. Each command turns a
// configuration into one or more named files (CSV, plus optional two-column
// .dat plot files); the caller decides where to write them. Kept out of the
// binary so tests can drive commands in-process.

namespace d2d::cli {

struct CommandOutput {
  // filename (relative to the output dir) -> content
  std::vector<std::pair<std::string, std::string>> files;
};

// Optimal caching distribution per sweep value of beta, lambda or r_c.
CommandOutput cmd_cache_dist(const ExperimentConfig& config, bool plot_data = false);

// Optimal transmit power and per-file energy over a link-distance grid.
CommandOutput cmd_power(const ExperimentConfig& config, bool plot_data = false);

// Offloading-vs-energy tradeoff across r_c for all four policy pairs.
CommandOutput cmd_tradeoff(const ExperimentConfig& config, bool plot_data = false);

// Monte Carlo campaign per sweep point, side by side with analytic values.
CommandOutput cmd_simulate(const ExperimentConfig& config, bool plot_data = false);

// Bundled experiment presets (fig3a..fig6d data files).
CommandOutput cmd_figures(const ExperimentConfig& config, bool plot_data = false);

// Writes every produced file under out_dir and returns the written paths.
std::vector<std::string> write_outputs(const std::string& out_dir,
                                       const CommandOutput& output);

}  // namespace d2d::cli
