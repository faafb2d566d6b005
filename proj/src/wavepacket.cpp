#include "blochring/wavepacket.hpp"

#include <cmath>
#include <stdexcept>

namespace blochring {

SpinState::SpinState(Eigen::VectorXcd up_amplitudes, Eigen::VectorXcd down_amplitudes)
    : up(std::move(up_amplitudes)), down(std::move(down_amplitudes)) {
  if (up.size() != down.size())
    throw std::invalid_argument("spin components must have equal length");
}

Eigen::VectorXd SpinState::site_density() const {
  return up.cwiseAbs2() + down.cwiseAbs2();
}

SpinState SpinState::site(int n_sites, int site) {
  if (site < 1 || site > n_sites) throw std::out_of_range("site index out of range");
  SpinState s(n_sites);
  s.up(site - 1) = 1.0;
  return s;
}

cplx inner_product(const SpinState& a, const SpinState& b) {
  if (a.n_sites() != b.n_sites()) throw std::invalid_argument("state dimensions differ");
  return a.up.dot(b.up) + a.down.dot(b.down);
}

std::array<cplx, 2> bloch_spinor(double theta, double phi_angle) {
  return {cplx{std::cos(theta / 2), 0.0}, std::sin(theta / 2) * std::polar(1.0, phi_angle)};
}

void PacketSpec::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const double weight = std::norm(spin_weights[0]) + std::norm(spin_weights[1]);
  if (std::abs(weight - 1.0) > 1e-12)
    throw std::invalid_argument("spin weights must be normalized");
}

WidthCheck width_check(double alpha, int n_sites, double factor) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  WidthCheck check;
  check.half_width = 2.0 * std::sqrt(std::log(2.0)) / alpha;
  check.margin = n_sites / check.half_width;
  check.ok = check.margin >= factor;
  return check;
}

SpinState gaussian_packet(const LatticeSpec& lattice, const PacketSpec& spec) {
  lattice.validate();
  spec.validate();
  const int n = lattice.n_sites;
  if (spec.center < 1.0 || spec.center > n)
    throw std::invalid_argument("packet center must lie in [1, N]");

  Eigen::VectorXcd envelope(n);
  for (int j = 1; j <= n; ++j) {
    const double d = j - spec.center;
    envelope(j - 1) = std::exp(-0.5 * spec.alpha * spec.alpha * d * d) * std::polar(1.0, spec.k0 * j);
  }
  envelope /= envelope.norm();
  return SpinState(spec.spin_weights[0] * envelope, spec.spin_weights[1] * envelope);
}

double default_qubit_momentum(const LatticeSpec& lattice) {
  return lattice.flux == 0.0 ? kPi / 2 : 0.0;
}

SpinState encode_qubit(double theta, double phi_angle, const LatticeSpec& lattice,
                       double alpha, double center) {
  return encode_qubit(theta, phi_angle, lattice, alpha, center, default_qubit_momentum(lattice));
}

SpinState encode_qubit(double theta, double phi_angle, const LatticeSpec& lattice,
                       double alpha, double center, double k0) {
  PacketSpec spec;
  spec.alpha = alpha;
  spec.k0 = k0;
  spec.center = center;
  spec.spin_weights = bloch_spinor(theta, phi_angle);
  return gaussian_packet(lattice, spec);
}

SpinState momentum_boost(const SpinState& state, double k0) {
  SpinState out = state;
  for (int j = 1; j <= state.n_sites(); ++j) {
    const cplx phase = std::polar(1.0, k0 * j);
    out.up(j - 1) *= phase;
    out.down(j - 1) *= phase;
  }
  return out;
}

}  // namespace blochring
