#pragma once

#include "blochring/lattice.hpp"

#include <array>

namespace blochring {

/// Single-electron wavefunction: one amplitude vector per spin projection.
/// Index i of each component is site i+1.
struct SpinState {
  Eigen::VectorXcd up;
  Eigen::VectorXcd down;

  SpinState() = default;
  explicit SpinState(int n_sites)
      : up(Eigen::VectorXcd::Zero(n_sites)), down(Eigen::VectorXcd::Zero(n_sites)) {}
  SpinState(Eigen::VectorXcd up_amplitudes, Eigen::VectorXcd down_amplitudes);

  int n_sites() const { return static_cast<int>(up.size()); }
  double norm_squared() const { return up.squaredNorm() + down.squaredNorm(); }

  /// Probability |psi_up(j)|^2 + |psi_down(j)|^2 per site.
  Eigen::VectorXd site_density() const;

  const Eigen::VectorXcd& component(int spin) const { return spin == 0 ? up : down; }
  Eigen::VectorXcd& component(int spin) { return spin == 0 ? up : down; }

  /// Spin-up electron localized on `site` (1-based).
  static SpinState site(int n_sites, int site);
};

/// Full spinor inner product <a|b>.
cplx inner_product(const SpinState& a, const SpinState& b);

/// Spinor (c_up, c_down) = (cos(theta/2), sin(theta/2) e^{i phi_angle}).
std::array<cplx, 2> bloch_spinor(double theta, double phi_angle);

/// Gaussian packet parameters: inverse width alpha, momentum k0, center N_A
/// (may be fractional) and spin weights (c_up, c_down).
struct PacketSpec {
  double alpha = 0.1;
  double k0 = 0.0;
  double center = 1.0;
  std::array<cplx, 2> spin_weights{cplx{1.0, 0.0}, cplx{0.0, 0.0}};

  void validate() const;
};

struct WidthCheck {
  bool ok = false;
  double half_width = 0.0;  // 2 sqrt(ln 2) / alpha
  double margin = 0.0;      // N / half_width
};

/// A packet satisfies the locality condition when N >= factor * half-width.
WidthCheck width_check(double alpha, int n_sites, double factor = 10.0);

/// psi_sigma(j) = c_sigma exp(-alpha^2 (j - N_A)^2 / 2) exp(i k0 j) / sqrt(Omega),
/// evaluated on j = 1..N without periodic images.
SpinState gaussian_packet(const LatticeSpec& lattice, const PacketSpec& spec);

/// Canonical momentum a qubit packet is written with by default. On a lattice
/// without flux this is pi/2. When flux threads the ring the field supplies
/// the boost, so the packet is written at rest.
double default_qubit_momentum(const LatticeSpec& lattice);

/// Flying-qubit packet cos(theta/2)|1>_A + sin(theta/2) e^{i phi}|0>_A with
/// spin up as |1> and spin down as |0>.
SpinState encode_qubit(double theta, double phi_angle, const LatticeSpec& lattice,
                       double alpha, double center);
SpinState encode_qubit(double theta, double phi_angle, const LatticeSpec& lattice,
                       double alpha, double center, double k0);

/// Multiplies the amplitude on site j by exp(i k0 j).
SpinState momentum_boost(const SpinState& state, double k0);

}  // namespace blochring
