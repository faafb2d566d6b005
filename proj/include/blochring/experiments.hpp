#pragma once

#include "blochring/config.hpp"
#include "blochring/table.hpp"
#include "blochring/wavepacket.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace blochring {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunInfo {
  std::string timestamp;
  std::string version = kToolVersion;
};

struct NamedTable {
  std::string stem;
  ResultTable table;
};

struct RunResult {
  std::vector<NamedTable> tables;
  std::vector<std::string> warnings;
};

/// Gaussian packet described by the config (spin from theta / phi_angle).
SpinState initial_state(const ExperimentConfig& config);

/// Grid points of the config's sweep, first axis slowest. An empty sweep
/// yields the config itself.
std::vector<ExperimentConfig> sweep_plan(const ExperimentConfig& config);

/// Runs the experiment (or sweep) and returns provenance-stamped tables.
/// Sweep points run concurrently on up to `config.jobs` threads; the result
/// does not depend on the thread count.
RunResult run_experiment(const ExperimentConfig& config, const RunInfo& info);

/// Writes every table in every configured format as <dir>/<prefix><stem><ext>.
std::vector<std::filesystem::path> write_results(const RunResult& result,
                                                 const ExperimentConfig& config,
                                                 const std::string& prefix = {});

struct FigureRun {
  std::string prefix;
  ExperimentConfig config;
};

/// Preset runs that regenerate the data behind one published figure panel.
std::vector<FigureRun> figure_recipe(std::string_view figure);
const std::vector<std::string>& figure_ids();

}  // namespace blochring
