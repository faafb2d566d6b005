#pragma once

#include "blochring/lattice.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace blochring {

/// Bad or inconsistent experiment configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Evolve, Autocorr, Fringe, Revival, QubitTransfer, Sweep };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment(std::string_view text);

enum class OutputFormat { Csv, PlotData };

struct SweepAxis {
  std::string key;
  std::vector<double> values;
};

/// Fully resolved experiment description.
struct ExperimentConfig {
  LatticeSpec lattice;

  double alpha = 0.1;
  std::optional<double> k0;      // defaults to 0 (qubit runs: default_qubit_momentum)
  std::optional<double> center;  // defaults to (N+1)/2
  double theta = 0.0;
  double phi_angle = 0.0;

  double t_max = 100.0;
  int n_samples = 101;

  ExperimentKind experiment = ExperimentKind::Autocorr;
  ExperimentKind sweep_base = ExperimentKind::Autocorr;
  std::optional<double> target;
  std::optional<double> delta_tau;  // fringe time; defaults to t_max
  double revival_threshold = 0.8;
  int fringe_window = 0;
  double fringe_floor = 3.0;
  double width_factor = 10.0;

  std::string out_dir = ".";
  std::vector<OutputFormat> formats{OutputFormat::Csv};
  int jobs = 0;  // 0 = available parallelism

  std::vector<SweepAxis> sweep;

  double packet_center() const;
  double packet_momentum() const { return k0.value_or(0.0); }
  /// The experiment actually evaluated at each grid point.
  ExperimentKind base_experiment() const;
  /// Throws ConfigError when an invariant does not hold.
  void validate() const;
};

/// Ordered key/value pairs as they appear in a file or on the command line.
/// Sweep entries use the key "sweep.<field>".
using RawSettings = std::vector<std::pair<std::string, std::string>>;

/// Parses the flat key/value format:
///
///     # comment
///     [lattice]
///     n_sites = 100
///     flux = 25
///     [sweep]
///     flux = 20, 25, 33
///
/// Section headers are optional; when present every key must belong to its section.
RawSettings parse_settings(std::string_view text);
RawSettings read_settings_file(const std::string& path);

/// Applies defaults, then `file`, then `overrides`, and validates the result.
ExperimentConfig resolve_config(const RawSettings& file, const RawSettings& overrides = {});

/// Sets one numeric field by name (used by sweeps). Throws ConfigError for
/// names that are not sweepable numeric fields.
void set_numeric_field(ExperimentConfig& config, std::string_view key, double value);

/// Every field that a sweep may vary.
const std::vector<std::string>& sweepable_keys();

/// key = value lines describing the resolved configuration, in a fixed order.
std::vector<std::string> describe(const ExperimentConfig& config);

}  // namespace blochring
