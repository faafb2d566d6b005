#pragma once

#include "blochring/propagator.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blochring {

/// Real observable sampled on a strictly increasing time grid (units of 1/J).
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;

  void validate() const;
};

/// n_samples equally spaced times from 0 to t_max inclusive.
std::vector<double> uniform_grid(double t_max, int n_samples);

/// Sum over spin sectors of |<psi_s(0)|psi_s(t)>|.
double autocorrelation(const SpinState& initial, const SpinState& evolved);

/// |A(t)| on a grid using exact spectral evolution (OpenMP over grid points).
TimeSeries autocorrelation_series(const SpectralPropagator& propagator, const SpinState& initial,
                                  std::span<const double> times);

/// Self-interference prediction from the head/tail superposition of a spreading
/// packet on a ring, keeping the direct term and the first wrapped image.
struct FringeProfile {
  std::vector<int> sites;
  std::vector<double> density;
  double wavevector = 0.0;  // K
  double phase = 0.0;       // phi_0
  double period = 0.0;      // Delta = |2 pi / K|
  double packet_center = 0.0;
  double seam = 0.0;  // site where head and tail carry equal amplitude (c = 1)
  std::vector<std::string> warnings;
};

FringeProfile fringe_predict(double alpha, double k0, double center, const LatticeSpec& lattice,
                             double delta_tau);

/// Sites within a quarter ring of the seam, where head and tail overlap.
std::vector<int> interference_region(const FringeProfile& profile);

struct FringeMeasurement {
  bool found = false;
  double period = 0.0;
  double significance = 0.0;  // peak magnitude over the median spectral floor
  int peak_bin = 0;
};

struct FringeMeasureOptions {
  int window = 0;  // envelope moving-average width in sites; 0 selects max(5, N/20)
  double floor_factor = 3.0;
};

/// Dominant spatial period of a (periodic) site density. The envelope is
/// divided out with a circular moving average before the DFT.
FringeMeasurement fringe_measure(std::span<const double> density,
                                 const FringeMeasureOptions& options = {});

double pearson_correlation(std::span<const double> a, std::span<const double> b);

enum class RevivalMechanism { LinearTraversal, QuadraticRevival, ParityReducedRevival };
enum class DispersionRegime { Linear, Quadratic };

std::string_view to_string(RevivalMechanism mechanism);

struct RevivalPrediction {
  RevivalMechanism mechanism = RevivalMechanism::LinearTraversal;
  double time = 0.0;
  std::string note;
};

/// Linear regime: N/(2J) on the ring, (N+1)/J on the chain.
/// Quadratic regime: N^2/(2 pi J) on the ring, 2(N+1)^2/(pi J) on the chain and
/// (N+1)^2/(4 pi J) for a chain packet centered at (N+1)/2.
RevivalPrediction revival_predict(const LatticeSpec& lattice, DispersionRegime regime,
                                  bool centered);

struct Peak {
  double time = 0.0;
  double value = 0.0;
};

/// Interior local maxima with value >= threshold, refined by a parabola
/// through the three nearest samples.
std::vector<Peak> revival_detect(const TimeSeries& series, double threshold = 0.8);

/// Largest sample with t_min < t <= t_max, refined like revival_detect.
std::optional<Peak> strongest_peak(const TimeSeries& series, double t_min, double t_max);

/// rho_{s s'} = sum_j psi_s(j) conj(psi_s'(j)); index 0 is spin up.
Eigen::Matrix2cd spin_reduced_state(const SpinState& state);

/// Bloch vector (x, y, z) of the spin reduced density matrix.
Eigen::Vector3d bloch_vector(const Eigen::Matrix2cd& rho);

struct TransferSetup {
  double alpha = 0.1;
  double source = 1.0;
  double target = 1.0;
  std::optional<double> k0;  // defaults to default_qubit_momentum(lattice)
};

/// |<qubit encoded at target | evolved qubit encoded at source>|.
double transfer_fidelity(double theta, double phi_angle, const LatticeSpec& lattice,
                         const TransferSetup& setup, double t,
                         const SpectralPropagator& propagator);

/// Position of the largest sample, refined by a parabola (circular when `periodic`).
double density_peak(std::span<const double> density, bool periodic);

/// Open-chain packet tracking. The chain evolves like a ring of 2(N+1) sites
/// carrying the odd extension of the state; keeping only the positive-momentum
/// half of each standing wave leaves a single travelling packet on that ring.
/// Returns the folded position (in sites 0..N+1) of that packet's density peak.
ReflectedCoordinate chain_packet_position(const SpectralPropagator& chain_propagator,
                                          const SpinState& initial, double t);

}  // namespace blochring
