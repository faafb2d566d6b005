#include "blochring/experiments.hpp"

#include "blochring/analysis.hpp"
#include "blochring/kernels.hpp"
#include "blochring/propagator.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>

namespace blochring {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct PointResult {
  std::vector<NamedTable> tables;
  std::vector<std::string> warnings;
};

void packet_warnings(const ExperimentConfig& c, std::vector<std::string>& warnings) {
  const WidthCheck w = width_check(c.alpha, c.lattice.n_sites, c.width_factor);
  if (!w.ok)
    warnings.push_back("width check: half-width " + fmt(w.half_width) + " sites gives margin " +
                       fmt(w.margin) + " < " + fmt(c.width_factor) +
                       "; packet is not well localized");
}

NamedTable evolve_table(const ExperimentConfig& c, const SpectralPropagator& prop,
                        const SpinState& psi0) {
  const auto times = uniform_grid(c.t_max, c.n_samples);
  Eigen::MatrixXd density;
  kernels::parallel::density_series(prop.expand(psi0), times, density);
  NamedTable out{"evolve", {{"t", "site", "density"}, {}, {}}};
  for (std::size_t r = 0; r < times.size(); ++r)
    for (Eigen::Index j = 0; j < density.cols(); ++j)
      out.table.add_row({times[r], static_cast<double>(j + 1), density(static_cast<Eigen::Index>(r), j)});
  return out;
}

NamedTable autocorr_table(const ExperimentConfig& c, const SpectralPropagator& prop,
                          const SpinState& psi0, const std::string& stem) {
  const auto times = uniform_grid(c.t_max, c.n_samples);
  const TimeSeries series = autocorrelation_series(prop, psi0, times);
  NamedTable out{stem, {{"t", "A_abs"}, {}, {}}};
  for (std::size_t r = 0; r < times.size(); ++r) out.table.add_row({series.times[r], series.values[r]});
  return out;
}

PointResult run_point(const ExperimentConfig& c) {
  PointResult result;
  packet_warnings(c, result.warnings);
  const SpectralPropagator prop(c.lattice);
  const SpinState psi0 = initial_state(c);

  switch (c.base_experiment()) {
    case ExperimentKind::Evolve:
      result.tables.push_back(evolve_table(c, prop, psi0));
      break;

    case ExperimentKind::Autocorr:
      result.tables.push_back(autocorr_table(c, prop, psi0, "autocorr"));
      break;

    case ExperimentKind::Fringe: {
      const double tau = c.delta_tau.value_or(c.t_max);
      const Eigen::VectorXd simulated = prop.evolve(psi0, tau).site_density();
      const FringeProfile profile = fringe_predict(c.alpha, c.packet_momentum(), c.packet_center(), c.lattice, tau);
      FringeMeasureOptions options;
      options.window = c.fringe_window;
      options.floor_factor = c.fringe_floor;
      const FringeMeasurement measured =
          fringe_measure(std::span<const double>(simulated.data(), simulated.size()), options);
      for (const auto& w : profile.warnings) result.warnings.push_back("fringe: " + w);
      if (!measured.found) result.warnings.push_back("fringe: no significant fringe in simulated density");
      NamedTable out{"fringe", {{"j", "simulated", "predicted", "K", "phi0", "Delta", "Delta_hat"}, {}, {}}};
      for (int j = 0; j < c.lattice.n_sites; ++j)
        out.table.add_row({static_cast<double>(j + 1), simulated(j), profile.density[j],
                           profile.wavevector, profile.phase, profile.period,
                           measured.found ? measured.period : kNaN});
      result.tables.push_back(std::move(out));
      break;
    }

    case ExperimentKind::Revival: {
      NamedTable series = autocorr_table(c, prop, psi0, "revival_series");
      TimeSeries ts;
      for (const auto& row : series.table.rows) {
        ts.times.push_back(row[0]);
        ts.values.push_back(row[1]);
      }
      const bool chain = c.lattice.topology == Topology::Chain;
      const bool centered = std::abs(c.packet_center() - 0.5 * (c.lattice.n_sites + 1)) < 1e-9;
      const double linear = revival_predict(c.lattice, DispersionRegime::Linear, false).time;
      const double quadratic = revival_predict(c.lattice, DispersionRegime::Quadratic, false).time;
      const double parity =
          chain ? revival_predict(c.lattice, DispersionRegime::Quadratic, true).time : kNaN;
      if (chain && !centered)
        result.warnings.push_back("revival: packet is not centered; tau_parity does not apply");
      NamedTable peaks{"revival_peaks", {{"t_peak", "A_peak", "tau_linear", "tau_quadratic", "tau_parity"}, {}, {}}};
      for (const Peak& p : revival_detect(ts, c.revival_threshold))
        peaks.table.add_row({p.time, p.value, linear, quadratic, parity});
      if (peaks.table.rows.empty())
        result.warnings.push_back("revival: no recurrence above threshold " + fmt(c.revival_threshold));
      result.tables.push_back(std::move(peaks));
      result.tables.push_back(std::move(series));
      break;
    }

    case ExperimentKind::QubitTransfer: {
      TransferSetup setup;
      setup.alpha = c.alpha;
      setup.source = c.packet_center();
      setup.target = *c.target;
      setup.k0 = c.k0;
      NamedTable out{"qubit_transfer", {{"theta", "phi_angle", "t", "fidelity"}, {}, {}}};
      for (double t : uniform_grid(c.t_max, c.n_samples))
        out.table.add_row({c.theta, c.phi_angle, t,
                           transfer_fidelity(c.theta, c.phi_angle, c.lattice, setup, t, prop)});
      result.tables.push_back(std::move(out));
      break;
    }

    case ExperimentKind::Sweep:
      throw std::logic_error("sweep is not a point experiment");
  }
  return result;
}

std::vector<std::string> provenance(const ExperimentConfig& c, const RunInfo& info,
                                    const std::vector<std::string>& warnings) {
  std::vector<std::string> lines;
  lines.push_back(std::string("blochring ") + info.version);
  lines.push_back("timestamp: " + info.timestamp);
  for (const auto& line : describe(c)) lines.push_back("config: " + line);
  for (const auto& w : warnings) lines.push_back("warning: " + w);
  return lines;
}

}  // namespace

SpinState initial_state(const ExperimentConfig& c) {
  PacketSpec spec;
  spec.alpha = c.alpha;
  spec.k0 = c.packet_momentum();
  spec.center = c.packet_center();
  spec.spin_weights = bloch_spinor(c.theta, c.phi_angle);
  return gaussian_packet(c.lattice, spec);
}

std::vector<ExperimentConfig> sweep_plan(const ExperimentConfig& config) {
  std::vector<ExperimentConfig> plan{config};
  for (const auto& axis : config.sweep) {
    std::vector<ExperimentConfig> next;
    next.reserve(plan.size() * axis.values.size());
    for (const auto& base : plan)
      for (double v : axis.values) {
        ExperimentConfig point = base;
        set_numeric_field(point, axis.key, v);
        next.push_back(std::move(point));
      }
    plan = std::move(next);
  }
  for (auto& point : plan) {
    point.sweep.clear();
    point.experiment = config.base_experiment();
    point.validate();
  }
  return plan;
}

RunResult run_experiment(const ExperimentConfig& config, const RunInfo& info) {
  config.validate();
  RunResult result;

  if (config.sweep.empty()) {
    PointResult point = run_point(config);
    result.warnings = std::move(point.warnings);
    result.tables = std::move(point.tables);
  } else {
    const auto plan = sweep_plan(config);
    const auto count = static_cast<long>(plan.size());
    std::vector<PointResult> points(plan.size());
    std::vector<std::exception_ptr> errors(plan.size());
    const int jobs = config.jobs > 0 ? config.jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (long i = 0; i < count; ++i) {
      try {
        points[i] = run_point(plan[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);

    std::vector<std::size_t> strides(config.sweep.size(), 1);
    for (std::size_t a = config.sweep.size(); a-- > 1;)
      strides[a - 1] = strides[a] * config.sweep[a].values.size();

    for (std::size_t i = 0; i < points.size(); ++i) {
      std::string label;
      std::vector<double> key_values;
      for (std::size_t a = 0; a < config.sweep.size(); ++a) {
        const auto& values = config.sweep[a].values;
        const double v = values[(i / strides[a]) % values.size()];
        key_values.push_back(v);
        label += (label.empty() ? "" : ", ") + config.sweep[a].key + "=" + fmt(v);
      }
      for (const auto& w : points[i].warnings) result.warnings.push_back("[" + label + "] " + w);
      for (auto& named : points[i].tables) {
        const std::string stem = "sweep_" + named.stem;
        auto it = std::find_if(result.tables.begin(), result.tables.end(),
                               [&](const NamedTable& t) { return t.stem == stem; });
        if (it == result.tables.end()) {
          ResultTable empty;
          for (const auto& axis : config.sweep) empty.columns.push_back(axis.key);
          empty.columns.insert(empty.columns.end(), named.table.columns.begin(),
                               named.table.columns.end());
          result.tables.push_back({stem, std::move(empty)});
          it = result.tables.end() - 1;
        }
        for (auto& row : named.table.rows) {
          std::vector<double> full = key_values;
          full.insert(full.end(), row.begin(), row.end());
          it->table.add_row(std::move(full));
        }
      }
    }
  }

  const auto lines = provenance(config, info, result.warnings);
  for (auto& named : result.tables) named.table.provenance = lines;
  return result;
}

std::vector<std::filesystem::path> write_results(const RunResult& result,
                                                 const ExperimentConfig& config,
                                                 const std::string& prefix) {
  const std::filesystem::path dir(config.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory '" + dir.string() + "'");
  std::vector<std::filesystem::path> written;
  for (const auto& named : result.tables)
    for (OutputFormat format : config.formats) {
      auto path = dir / (prefix + named.stem + std::string(file_extension(format)));
      emit(named.table, format, path);
      written.push_back(std::move(path));
    }
  return written;
}

// ---------------------------------------------------------------------------
// Figure presets. Times are in units of 1/J throughout.

namespace {

ExperimentConfig ring100(double alpha, double k0, double flux) {
  ExperimentConfig c;
  c.lattice = {Topology::Ring, 100, 1.0, flux};
  c.alpha = alpha;
  c.k0 = k0;
  c.center = 50.0;
  return c;
}

ExperimentConfig chain100(double alpha, double k0) {
  ExperimentConfig c = ring100(alpha, k0, 0.0);
  c.lattice.topology = Topology::Chain;
  return c;
}

ExperimentConfig with_run(ExperimentConfig c, ExperimentKind kind, double t_max, int samples) {
  c.experiment = kind;
  c.t_max = t_max;
  c.n_samples = samples;
  return c;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"2",  "3a", "3b", "3c", "3d",
                                               "4a", "4b", "4c", "4d", "5b"};
  return ids;
}

std::vector<FigureRun> figure_recipe(std::string_view figure) {
  const std::string id(figure);
  const std::string prefix = "fig" + id + "_";
  // Flux values of the autocorrelation panels, and their boost equivalents on the chain.
  const std::vector<double> fluxes{20.0, 25.0, 33.0};
  std::vector<double> boosts;
  for (double f : fluxes) boosts.push_back(2.0 * kPi * f / 100.0);

  if (id == "2")
    return {{prefix, with_run(ring100(0.1, 0.0, 25.0), ExperimentKind::Evolve, 200.0, 201)}};
  if (id == "3a" || id == "3b") {
    auto c = with_run(ring100(id == "3a" ? 0.1 : 0.3, 0.0, 25.0), ExperimentKind::Autocorr, 250.0, 2501);
    c.sweep = {{"flux", fluxes}};
    return {{prefix, c}};
  }
  if (id == "3c" || id == "3d") {
    auto c = with_run(chain100(id == "3c" ? 0.1 : 0.3, 0.0), ExperimentKind::Autocorr, 250.0, 2501);
    c.sweep = {{"k0", boosts}};
    return {{prefix, c}};
  }
  if (id == "4a")
    return {{prefix, with_run(ring100(0.3, 0.05 * kPi, 0.0), ExperimentKind::Evolve, 200.0, 201)}};
  if (id == "4b") {
    auto c = with_run(ring100(0.3, 0.05 * kPi, 0.0), ExperimentKind::Fringe, 90.0, 2);
    c.delta_tau = 90.0;
    return {{prefix, c}};
  }
  if (id == "4c")
    return {{prefix, with_run(ring100(0.1, 0.0, 0.0), ExperimentKind::Evolve, 2000.0, 401)}};
  if (id == "4d") {
    auto ring = with_run(ring100(0.1, 0.0, 0.0), ExperimentKind::Revival, 2000.0, 20001);
    auto chain = with_run(chain100(0.1, 0.0), ExperimentKind::Revival, 2000.0, 20001);
    ring.center = 50.5;
    chain.center = 50.5;
    return {{prefix + "ring_", ring}, {prefix + "chain_", chain}};
  }
  if (id == "5b")
    return {{prefix, with_run(chain100(0.1, kPi / 2), ExperimentKind::Evolve, 300.0, 301)}};
  throw ConfigError("unknown figure '" + id + "'");
}

}  // namespace blochring
