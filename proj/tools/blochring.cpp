// Command-line front end: single experiments, sweeps and figure presets.

#include "blochring/experiments.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <map>

namespace {

using namespace blochring;

enum ExitCode { kOk = 0, kConfigError = 1, kRuntimeError = 2, kIoError = 3 };

constexpr const char* kOutDirVariable = "BLOCHRING_OUT_DIR";

struct Flags {
  std::string config_path;
  std::map<std::string, std::string> values;  // key -> raw text
  std::vector<std::string> sweeps;            // key=v1,v2,...
  std::string timestamp;
  std::string figure;
};

// Flag name -> config key, in the order overrides are applied.
const std::vector<std::pair<std::string, std::string>>& flag_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"--n-sites", "n_sites"},     {"--topology", "topology"},
      {"--hopping", "hopping"},     {"--flux", "flux"},
      {"--flux-phase", "flux_phase"}, {"--alpha", "alpha"},
      {"--k0", "k0"},               {"--center", "center"},
      {"--t-max", "t_max"},         {"--samples", "n_samples"},
      {"--theta", "theta"},         {"--phi-angle", "phi_angle"},
      {"--target", "target"},       {"--delta-tau", "delta_tau"},
      {"--threshold", "revival_threshold"}, {"--fringe-window", "fringe_window"},
      {"--fringe-floor", "fringe_floor"},   {"--base", "sweep_base"},
      {"--jobs", "jobs"},           {"--out", "out"},
      {"--format", "formats"},
  };
  return keys;
}

void add_common_options(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config_path, "Key/value experiment file")->check(CLI::ExistingFile);
  for (const auto& [flag, key] : flag_keys())
    cmd->add_option(flag, flags.values[key], "Overrides '" + key + "'");
  cmd->add_option("--sweep", flags.sweeps, "Sweep axis as key=v1,v2,... (repeatable)");
  cmd->add_option("--timestamp", flags.timestamp, "Pin the provenance timestamp");
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RawSettings overrides_from(const Flags& flags, std::string_view experiment) {
  RawSettings out;
  if (!experiment.empty()) out.emplace_back("experiment", std::string(experiment));
  for (const auto& [flag, key] : flag_keys()) {
    const auto it = flags.values.find(key);
    if (it != flags.values.end() && !it->second.empty()) out.emplace_back(key, it->second);
  }
  for (const auto& axis : flags.sweeps) {
    const auto eq = axis.find('=');
    if (eq == std::string::npos) throw ConfigError("--sweep expects key=v1,v2,..., got '" + axis + "'");
    out.emplace_back("sweep." + axis.substr(0, eq), axis.substr(eq + 1));
  }
  return out;
}

RawSettings base_settings(const Flags& flags) {
  RawSettings base;
  if (const char* dir = std::getenv(kOutDirVariable)) base.emplace_back("out", dir);
  if (!flags.config_path.empty()) {
    const RawSettings file = read_settings_file(flags.config_path);
    base.insert(base.end(), file.begin(), file.end());
  }
  return base;
}

void report(const RunResult& result, const std::vector<std::filesystem::path>& written) {
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& p : written) std::cout << p.string() << "\n";
}

int run(std::string_view experiment, const Flags& flags) {
  const ExperimentConfig config = resolve_config(base_settings(flags), overrides_from(flags, experiment));
  const RunInfo info{flags.timestamp.empty() ? utc_now() : flags.timestamp};
  const RunResult result = run_experiment(config, info);
  report(result, write_results(result, config));
  return kOk;
}

int reproduce(const Flags& flags) {
  const RunInfo info{flags.timestamp.empty() ? utc_now() : flags.timestamp};
  // Presets fix the physics; output, jobs and timestamp still come from flags.
  RawSettings output;
  if (const char* dir = std::getenv(kOutDirVariable)) output.emplace_back("out", dir);
  for (const char* key : {"out", "formats", "jobs"}) {
    const auto it = flags.values.find(key);
    if (it != flags.values.end() && !it->second.empty()) output.emplace_back(key, it->second);
  }
  for (auto& run : figure_recipe(flags.figure)) {
    ExperimentConfig config = run.config;
    if (!output.empty()) {
      RawSettings sized{{"n_sites", std::to_string(config.lattice.n_sites)}};
      const ExperimentConfig out = resolve_config(sized, output);
      config.out_dir = out.out_dir;
      config.formats = out.formats;
      config.jobs = out.jobs;
    }
    const RunResult result = run_experiment(config, info);
    report(result, write_results(result, config, run.prefix));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-packet dynamics of a spin-carrying Bloch electron on a flux-threaded ring or open chain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("blochring ") + kToolVersion);

  Flags flags;
  std::string chosen;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"evolve", "Site density over time (long-form t, site, density)"},
      {"autocorr", "Autocorrelation |A(t)|"},
      {"fringe", "Self-interference fringe: simulation vs prediction"},
      {"revival", "Revival-time predictions vs detected recurrences"},
      {"qubit-transfer", "Spin-qubit transfer fidelity"},
      {"sweep", "Cartesian parameter sweep of a base experiment (--base)"},
  };
  for (const auto& [name, help] : commands) {
    auto* cmd = app.add_subcommand(name, help);
    add_common_options(cmd, flags);
    cmd->callback([&chosen, name = name] { chosen = name; });
  }
  auto* repro = app.add_subcommand("reproduce", "Regenerate the data behind a figure panel");
  repro->add_option("--figure", flags.figure, "Figure panel")
      ->required()
      ->check(CLI::IsMember(figure_ids()));
  repro->add_option("--out", flags.values["out"], "Output directory");
  repro->add_option("--format", flags.values["formats"], "csv and/or plotdata");
  repro->add_option("--jobs", flags.values["jobs"], "Concurrent sweep points");
  repro->add_option("--timestamp", flags.timestamp, "Pin the provenance timestamp");
  repro->callback([&chosen] { chosen = "reproduce"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (chosen == "reproduce") return reproduce(flags);
    return run(chosen, flags);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}
