#include "blochring/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace blochring {

void TimeSeries::validate() const {
  if (times.size() != values.size())
    throw std::invalid_argument("time series lengths differ");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("time series times must be strictly increasing");
}

std::vector<double> uniform_grid(double t_max, int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("a time grid needs at least 2 samples");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  std::vector<double> times(n_samples);
  for (int i = 0; i < n_samples; ++i) times[i] = t_max * i / (n_samples - 1);
  return times;
}

double autocorrelation(const SpinState& initial, const SpinState& evolved) {
  if (initial.n_sites() != evolved.n_sites())
    throw std::invalid_argument("state dimensions differ");
  return std::abs(initial.up.dot(evolved.up)) + std::abs(initial.down.dot(evolved.down));
}

TimeSeries autocorrelation_series(const SpectralPropagator& propagator, const SpinState& initial,
                                  std::span<const double> times) {
  if (times.empty()) throw std::invalid_argument("empty time grid");
  TimeSeries series;
  series.times.assign(times.begin(), times.end());
  series.values.resize(times.size());
  kernels::parallel::autocorrelation(propagator.expand(initial), times, series.values);
  series.validate();
  return series;
}

// ---------------------------------------------------------------------------
// Self-interference fringe

FringeProfile fringe_predict(double alpha, double k0, double center, const LatticeSpec& lattice,
                             double delta_tau) {
  lattice.validate();
  if (lattice.topology != Topology::Ring)
    throw std::invalid_argument("fringe prediction needs a ring (wrapped images)");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");

  const int n = lattice.n_sites;
  const double hop = lattice.hopping;
  const AnalyticSpreadParams params{alpha, k0, center, hop};
  const double ap = params.width(delta_tau);
  const double ap2 = ap * ap;

  FringeProfile profile;
  profile.wavevector = 2.0 * n * hop * alpha * alpha * ap2 * delta_tau;
  profile.packet_center = params.center(delta_tau);
  profile.phase = profile.wavevector * (0.5 * n - profile.packet_center) + k0 * n;
  profile.period = profile.wavevector == 0.0 ? std::numeric_limits<double>::infinity()
                                             : std::abs(2.0 * kPi / profile.wavevector);

  // Pick the image pair whose direct term holds the packet center, so the head
  // is the image one ring further on.
  const double wraps = std::floor((profile.packet_center - 0.5 * n) / n);
  const double nc = profile.packet_center - wraps * n;
  const double phi0 = profile.wavevector * (0.5 * n - nc) + k0 * n;
  profile.seam = nc - 0.5 * n;

  profile.sites.resize(n);
  profile.density.resize(n);
  double neglected = 0.0;
  double overlap = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double d = j - nc;
    // |Phi(j)|^2 [1 + c^2 + 2c cos(Kj + phi0)] with c = exp(-alpha'^2 N (j - N_c + N/2)),
    // expanded so that no factor overflows: |Phi|^2 c = exp(-alpha'^2/2 (d^2 + (d+N)^2)).
    const double direct = std::exp(-ap2 * d * d);
    const double image = std::exp(-ap2 * (d + n) * (d + n));
    const double cross = std::exp(-0.5 * ap2 * (d * d + (d + n) * (d + n)));
    profile.sites[j - 1] = j;
    profile.density[j - 1] =
        direct + image + 2.0 * cross * std::cos(profile.wavevector * j + phi0);
    overlap = std::max(overlap, cross);
    neglected += std::exp(-ap2 * (d - n) * (d - n)) + std::exp(-ap2 * (d + 2 * n) * (d + 2 * n));
  }
  const double total = std::accumulate(profile.density.begin(), profile.density.end(), 0.0);
  for (double& v : profile.density) v /= total;

  if (neglected / total > 0.25)
    profile.warnings.push_back("images beyond the first wrap carry " +
                               std::to_string(neglected / total) +
                               " of the two-image weight; fringe formula is approximate");
  if (overlap < 1e-3)
    profile.warnings.push_back("head and tail of the packet do not overlap yet; no fringe expected");
  return profile;
}

std::vector<int> interference_region(const FringeProfile& profile) {
  const int n = static_cast<int>(profile.sites.size());
  std::vector<int> region;
  for (int j : profile.sites) {
    double d = std::fmod(j - profile.seam, static_cast<double>(n));
    if (d < 0) d += n;
    d = std::min(d, n - d);
    if (d <= 0.25 * n) region.push_back(j);
  }
  return region;
}

FringeMeasurement fringe_measure(std::span<const double> density,
                                 const FringeMeasureOptions& options) {
  const int n = static_cast<int>(density.size());
  if (n < 16) throw std::invalid_argument("fringe measurement needs at least 16 sites");
  const int window = options.window > 0 ? options.window : std::max(5, n / 20);
  const int lo = -(window / 2);
  const int hi = lo + window - 1;

  std::vector<double> detrended(n);
  for (int j = 0; j < n; ++j) {
    double env = 0.0;
    for (int o = lo; o <= hi; ++o) env += density[((j + o) % n + n) % n];
    env /= window;
    detrended[j] = env > 0.0 ? density[j] / env - 1.0 : 0.0;
  }
  const double mean = std::accumulate(detrended.begin(), detrended.end(), 0.0) / n;
  for (double& v : detrended) v -= mean;

  const int bins = n / 2;
  std::vector<double> magnitude(bins + 1, 0.0);
  for (int b = 1; b <= bins; ++b) {
    cplx acc{};
    for (int j = 0; j < n; ++j) acc += detrended[j] * std::polar(1.0, -2.0 * kPi * b * j / n);
    magnitude[b] = std::abs(acc);
  }

  FringeMeasurement result;
  const auto peak_it = std::max_element(magnitude.begin() + 1, magnitude.end());
  const int b = static_cast<int>(peak_it - magnitude.begin());
  std::vector<double> floor(magnitude.begin() + 1, magnitude.end());
  std::nth_element(floor.begin(), floor.begin() + floor.size() / 2, floor.end());
  const double median = floor[floor.size() / 2];
  const double peak = *peak_it;
  result.peak_bin = b;
  result.significance = median > 0.0 ? peak / median : (peak > 0.0 ? HUGE_VAL : 0.0);
  if (peak <= 1e-12 || peak < options.floor_factor * median) return result;

  double shift = 0.0;
  if (b > 1 && b < bins) {
    const double y0 = magnitude[b - 1], y1 = magnitude[b], y2 = magnitude[b + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    if (denom != 0.0) shift = 0.5 * (y0 - y2) / denom;
  }
  result.found = true;
  result.period = n / (b + shift);
  return result;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("correlation needs two equal-length samples");
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

// ---------------------------------------------------------------------------
// Revivals

std::string_view to_string(RevivalMechanism mechanism) {
  switch (mechanism) {
    case RevivalMechanism::LinearTraversal: return "linear-traversal";
    case RevivalMechanism::QuadraticRevival: return "quadratic-revival";
    case RevivalMechanism::ParityReducedRevival: return "parity-reduced-revival";
  }
  return "unknown";
}

RevivalPrediction revival_predict(const LatticeSpec& lattice, DispersionRegime regime,
                                  bool centered) {
  lattice.validate();
  const double n = lattice.n_sites;
  const double hop = lattice.hopping;
  const bool ring = lattice.topology == Topology::Ring;
  RevivalPrediction p;
  if (regime == DispersionRegime::Linear) {
    p.mechanism = RevivalMechanism::LinearTraversal;
    p.time = ring ? n / (2.0 * hop) : (n + 1.0) / hop;
  } else if (ring) {
    p.mechanism = RevivalMechanism::QuadraticRevival;
    p.time = n * n / (2.0 * kPi * hop);
  } else if (centered) {
    p.mechanism = RevivalMechanism::ParityReducedRevival;
    p.time = (n + 1.0) * (n + 1.0) / (4.0 * kPi * hop);
  } else {
    p.mechanism = RevivalMechanism::QuadraticRevival;
    p.time = 2.0 * (n + 1.0) * (n + 1.0) / (kPi * hop);
  }
  if (centered && !(regime == DispersionRegime::Quadratic && !ring))
    p.note = "centered flag only applies to a chain in the quadratic regime; ignored";
  return p;
}

namespace {

Peak refine(const TimeSeries& s, std::size_t i) {
  const double x0 = s.times[i - 1], x1 = s.times[i], x2 = s.times[i + 1];
  const double y0 = s.values[i - 1], y1 = s.values[i], y2 = s.values[i + 1];
  // Parabola through three (possibly unevenly spaced) points.
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);
  if (!(curvature < 0.0)) return {x1, y1};
  const double slope = d01 - curvature * (x0 + x1);
  const double tv = -slope / (2.0 * curvature);
  if (tv < x0 || tv > x2) return {x1, y1};
  const double value = y1 + (tv - x1) * (d01 + curvature * (tv - x0));
  return {tv, value};
}

}  // namespace

std::vector<Peak> revival_detect(const TimeSeries& series, double threshold) {
  series.validate();
  std::vector<Peak> peaks;
  const auto& v = series.values;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] >= threshold && v[i] > v[i - 1] && v[i] >= v[i + 1]) peaks.push_back(refine(series, i));
  }
  return peaks;
}

std::optional<Peak> strongest_peak(const TimeSeries& series, double t_min, double t_max) {
  series.validate();
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double t = series.times[i];
    if (t <= t_min || t > t_max) continue;
    if (!best || series.values[i] > series.values[*best]) best = i;
  }
  if (!best) return std::nullopt;
  if (*best == 0 || *best + 1 == series.times.size())
    return Peak{series.times[*best], series.values[*best]};
  return refine(series, *best);
}

// ---------------------------------------------------------------------------
// Spin and transfer

Eigen::Matrix2cd spin_reduced_state(const SpinState& state) {
  Eigen::Matrix2cd rho;
  for (int s = 0; s < 2; ++s)
    for (int r = 0; r < 2; ++r) rho(s, r) = state.component(r).dot(state.component(s));
  return rho;
}

Eigen::Vector3d bloch_vector(const Eigen::Matrix2cd& rho) {
  return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

double transfer_fidelity(double theta, double phi_angle, const LatticeSpec& lattice,
                         const TransferSetup& setup, double t,
                         const SpectralPropagator& propagator) {
  const double k0 = setup.k0.value_or(default_qubit_momentum(lattice));
  const SpinState sent = encode_qubit(theta, phi_angle, lattice, setup.alpha, setup.source, k0);
  const SpinState ideal = encode_qubit(theta, phi_angle, lattice, setup.alpha, setup.target, k0);
  return std::abs(inner_product(ideal, propagator.evolve(sent, t)));
}

double density_peak(std::span<const double> density, bool periodic) {
  const int n = static_cast<int>(density.size());
  if (n == 0) throw std::invalid_argument("empty density");
  const int i = static_cast<int>(std::max_element(density.begin(), density.end()) - density.begin());
  if (!periodic && (i == 0 || i == n - 1)) return i;
  const double y0 = density[(i - 1 + n) % n], y1 = density[i], y2 = density[(i + 1) % n];
  const double denom = y0 - 2.0 * y1 + y2;
  const double shift = denom < 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
  return i + shift;
}

ReflectedCoordinate chain_packet_position(const SpectralPropagator& chain_propagator,
                                          const SpinState& initial, double t) {
  const EigenBasis& basis = chain_propagator.basis();
  const int n = basis.dimension();
  if (static_cast<int>(basis.labels.size()) != n)
    throw std::invalid_argument("chain tracking needs an analytic (labelled) chain basis");

  const kernels::ModeExpansion e = chain_propagator.expand(initial);
  const int ring = 2 * (n + 1);
  std::vector<double> unfolded(ring, 0.0);
  for (int s = 0; s < 2; ++s) {
    Eigen::VectorXcd c(n);
    for (int a = 0; a < n; ++a) c(a) = e.coefficients[s](a) * std::polar(1.0, -e.energies(a) * t);
    for (int x = 0; x < ring; ++x) {
      cplx amp{};
      for (int a = 0; a < n; ++a) amp += c(a) * std::polar(1.0, basis.labels[a] * x);
      unfolded[x] += std::norm(amp);
    }
  }
  double x = density_peak(unfolded, true);
  if (x < 0) x += ring;
  return reflect_map(x, n);
}

}  // namespace blochring
