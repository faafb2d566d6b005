#include "blochring/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace blochring {

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Evolve: return "evolve";
    case ExperimentKind::Autocorr: return "autocorr";
    case ExperimentKind::Fringe: return "fringe";
    case ExperimentKind::Revival: return "revival";
    case ExperimentKind::QubitTransfer: return "qubit-transfer";
    case ExperimentKind::Sweep: return "sweep";
  }
  return "unknown";
}

ExperimentKind parse_experiment(std::string_view text) {
  for (auto kind : {ExperimentKind::Evolve, ExperimentKind::Autocorr, ExperimentKind::Fringe,
                    ExperimentKind::Revival, ExperimentKind::QubitTransfer, ExperimentKind::Sweep})
    if (text == to_string(kind)) return kind;
  if (text == "qubit_transfer") return ExperimentKind::QubitTransfer;
  throw ConfigError("unknown experiment '" + std::string(text) + "'");
}

double ExperimentConfig::packet_center() const {
  return center.value_or(0.5 * (lattice.n_sites + 1));
}

ExperimentKind ExperimentConfig::base_experiment() const {
  return experiment == ExperimentKind::Sweep ? sweep_base : experiment;
}

void ExperimentConfig::validate() const {
  try {
    lattice.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
  if (n_samples < 2) throw ConfigError("n_samples must be at least 2");
  const double c = packet_center();
  if (c < 1.0 || c > lattice.n_sites) throw ConfigError("center must lie in [1, n_sites]");
  if (sweep_base == ExperimentKind::Sweep) throw ConfigError("sweep_base cannot be sweep");
  if (base_experiment() == ExperimentKind::QubitTransfer && !target)
    throw ConfigError("qubit-transfer requires a target site");
  if (delta_tau && !(*delta_tau > 0.0)) throw ConfigError("delta_tau must be positive");
  if (jobs < 0) throw ConfigError("jobs must be non-negative");
  if (formats.empty()) throw ConfigError("at least one output format is required");
  for (const auto& axis : sweep) {
    if (std::find(sweepable_keys().begin(), sweepable_keys().end(), axis.key) ==
        sweepable_keys().end())
      throw ConfigError("sweep parameter '" + axis.key + "' is not a numeric config field");
    if (axis.values.empty()) throw ConfigError("sweep parameter '" + axis.key + "' has no values");
  }
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v))
    throw ConfigError("key '" + key + "' expects a real number, got '" + text + "'");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end)
    throw ConfigError("key '" + key + "' expects an integer, got '" + text + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

// Resolution state: the config plus a pending flux phase, which needs N.
struct Builder {
  ExperimentConfig config;
  std::optional<double> flux_phase;
};

using Setter = std::function<void(Builder&, const std::string& key, const std::string& value)>;

struct KeySpec {
  std::string section;
  Setter set;
};

Setter real_field(double ExperimentConfig::*field) {
  return [field](Builder& b, const std::string& k, const std::string& v) {
    b.config.*field = to_real(k, v);
  };
}

Setter optional_real_field(std::optional<double> ExperimentConfig::*field) {
  return [field](Builder& b, const std::string& k, const std::string& v) {
    b.config.*field = to_real(k, v);
  };
}

Setter int_field(int ExperimentConfig::*field) {
  return [field](Builder& b, const std::string& k, const std::string& v) {
    b.config.*field = to_int(k, v);
  };
}

const std::map<std::string, KeySpec>& key_table() {
  static const std::map<std::string, KeySpec> table = {
      {"topology",
       {"lattice",
        [](Builder& b, const std::string&, const std::string& v) {
          try {
            b.config.lattice.topology = parse_topology(v);
          } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
          }
        }}},
      {"n_sites",
       {"lattice", [](Builder& b, const std::string& k, const std::string& v) {
          b.config.lattice.n_sites = to_int(k, v);
        }}},
      {"hopping",
       {"lattice", [](Builder& b, const std::string& k, const std::string& v) {
          b.config.lattice.hopping = to_real(k, v);
        }}},
      {"flux",
       {"lattice",
        [](Builder& b, const std::string& k, const std::string& v) {
          b.config.lattice.flux = to_real(k, v);
          b.flux_phase.reset();
        }}},
      {"flux_phase",
       {"lattice", [](Builder& b, const std::string& k, const std::string& v) {
          b.flux_phase = to_real(k, v);
        }}},
      {"alpha", {"packet", real_field(&ExperimentConfig::alpha)}},
      {"k0", {"packet", optional_real_field(&ExperimentConfig::k0)}},
      {"center", {"packet", optional_real_field(&ExperimentConfig::center)}},
      {"theta", {"packet", real_field(&ExperimentConfig::theta)}},
      {"phi_angle", {"packet", real_field(&ExperimentConfig::phi_angle)}},
      {"t_max", {"time", real_field(&ExperimentConfig::t_max)}},
      {"n_samples", {"time", int_field(&ExperimentConfig::n_samples)}},
      {"experiment",
       {"experiment", [](Builder& b, const std::string&, const std::string& v) {
          b.config.experiment = parse_experiment(v);
        }}},
      {"sweep_base",
       {"experiment", [](Builder& b, const std::string&, const std::string& v) {
          b.config.sweep_base = parse_experiment(v);
        }}},
      {"target", {"experiment", optional_real_field(&ExperimentConfig::target)}},
      {"delta_tau", {"experiment", optional_real_field(&ExperimentConfig::delta_tau)}},
      {"revival_threshold", {"experiment", real_field(&ExperimentConfig::revival_threshold)}},
      {"fringe_window", {"experiment", int_field(&ExperimentConfig::fringe_window)}},
      {"fringe_floor", {"experiment", real_field(&ExperimentConfig::fringe_floor)}},
      {"width_factor", {"experiment", real_field(&ExperimentConfig::width_factor)}},
      {"out",
       {"output", [](Builder& b, const std::string&, const std::string& v) {
          b.config.out_dir = v;
        }}},
      {"formats",
       {"output",
        [](Builder& b, const std::string& k, const std::string& v) {
          b.config.formats.clear();
          for (const auto& item : split_list(v)) {
            if (item == "csv")
              b.config.formats.push_back(OutputFormat::Csv);
            else if (item == "plotdata")
              b.config.formats.push_back(OutputFormat::PlotData);
            else
              throw ConfigError("key '" + k + "' expects csv or plotdata, got '" + item + "'");
          }
        }}},
      {"jobs", {"output", int_field(&ExperimentConfig::jobs)}},
  };
  return table;
}

void apply(Builder& b, const std::string& key, const std::string& value) {
  if (key.rfind("sweep.", 0) == 0) {
    const std::string field = key.substr(6);
    if (std::find(sweepable_keys().begin(), sweepable_keys().end(), field) ==
        sweepable_keys().end())
      throw ConfigError("sweep parameter '" + field + "' is not a numeric config field");
    SweepAxis axis{field, {}};
    for (const auto& item : split_list(value)) axis.values.push_back(to_real(key, item));
    auto& sweep = b.config.sweep;
    const auto existing = std::find_if(sweep.begin(), sweep.end(),
                                       [&](const SweepAxis& a) { return a.key == field; });
    if (existing != sweep.end())
      *existing = std::move(axis);
    else
      sweep.push_back(std::move(axis));
    return;
  }
  const auto it = key_table().find(key);
  if (it == key_table().end()) throw ConfigError("unknown key '" + key + "'");
  it->second.set(b, key, value);
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& sweepable_keys() {
  static const std::vector<std::string> keys = {
      "n_sites", "hopping", "flux", "flux_phase", "alpha", "k0", "center", "theta",
      "phi_angle", "t_max", "n_samples", "target", "delta_tau", "revival_threshold"};
  return keys;
}

void set_numeric_field(ExperimentConfig& config, std::string_view key, double value) {
  if (key == "n_sites" || key == "n_samples") {
    if (value != std::floor(value)) throw ConfigError(std::string(key) + " must be an integer");
    (key == "n_sites" ? config.lattice.n_sites : config.n_samples) = static_cast<int>(value);
  } else if (key == "hopping") {
    config.lattice.hopping = value;
  } else if (key == "flux") {
    config.lattice.flux = value;
  } else if (key == "flux_phase") {
    config.lattice.flux = value * config.lattice.n_sites / (2.0 * kPi);
  } else if (key == "alpha") {
    config.alpha = value;
  } else if (key == "k0") {
    config.k0 = value;
  } else if (key == "center") {
    config.center = value;
  } else if (key == "theta") {
    config.theta = value;
  } else if (key == "phi_angle") {
    config.phi_angle = value;
  } else if (key == "t_max") {
    config.t_max = value;
  } else if (key == "target") {
    config.target = value;
  } else if (key == "delta_tau") {
    config.delta_tau = value;
  } else if (key == "revival_threshold") {
    config.revival_threshold = value;
  } else {
    throw ConfigError("'" + std::string(key) + "' is not a sweepable numeric field");
  }
}

RawSettings parse_settings(std::string_view text) {
  static const std::vector<std::string> sections = {"lattice", "packet",     "time",
                                                    "experiment", "output", "sweep"};
  RawSettings out;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      section = trim(body.substr(1, body.size() - 2));
      if (std::find(sections.begin(), sections.end(), section) == sections.end())
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (section == "sweep") {
      key = "sweep." + key;
    } else if (!section.empty()) {
      const auto it = key_table().find(key);
      if (it == key_table().end()) throw ConfigError("unknown key '" + key + "'");
      if (it->second.section != section)
        throw ConfigError("key '" + key + "' belongs in section [" + it->second.section +
                          "], not [" + section + "]");
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

RawSettings read_settings_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_settings(text.str());
}

ExperimentConfig resolve_config(const RawSettings& file, const RawSettings& overrides) {
  Builder b;
  b.config.lattice.n_sites = 0;
  bool have_sites = false;
  for (const auto* settings : {&file, &overrides})
    for (const auto& [key, value] : *settings) {
      apply(b, key, value);
      if (key == "n_sites") have_sites = true;
    }
  if (!have_sites) throw ConfigError("missing required key 'n_sites'");
  if (b.flux_phase) b.config.lattice.flux = *b.flux_phase * b.config.lattice.n_sites / (2.0 * kPi);
  b.config.validate();
  return b.config;
}

std::vector<std::string> describe(const ExperimentConfig& c) {
  std::vector<std::string> lines;
  auto add = [&](const std::string& k, const std::string& v) { lines.push_back(k + " = " + v); };
  add("topology", std::string(to_string(c.lattice.topology)));
  add("n_sites", std::to_string(c.lattice.n_sites));
  add("hopping", format_real(c.lattice.hopping));
  add("flux", format_real(c.lattice.flux));
  add("alpha", format_real(c.alpha));
  if (c.k0) add("k0", format_real(*c.k0));
  add("center", format_real(c.packet_center()));
  add("theta", format_real(c.theta));
  add("phi_angle", format_real(c.phi_angle));
  add("t_max", format_real(c.t_max));
  add("n_samples", std::to_string(c.n_samples));
  add("experiment", std::string(to_string(c.experiment)));
  if (c.experiment == ExperimentKind::Sweep)
    add("sweep_base", std::string(to_string(c.sweep_base)));
  if (c.target) add("target", format_real(*c.target));
  if (c.delta_tau) add("delta_tau", format_real(*c.delta_tau));
  add("revival_threshold", format_real(c.revival_threshold));
  add("fringe_window", std::to_string(c.fringe_window));
  add("fringe_floor", format_real(c.fringe_floor));
  add("width_factor", format_real(c.width_factor));
  for (const auto& axis : c.sweep) {
    std::string values;
    for (double v : axis.values) values += (values.empty() ? "" : ", ") + format_real(v);
    add("sweep." + axis.key, values);
  }
  return lines;
}

}  // namespace blochring
