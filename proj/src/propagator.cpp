#include "blochring/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace blochring {

SpectralPropagator::SpectralPropagator(EigenBasis basis)
    : basis_(std::move(basis)), adjoint_(basis_.modes.adjoint()) {}

SpectralPropagator::SpectralPropagator(const LatticeSpec& lattice)
    : SpectralPropagator(eigensystem(lattice)) {}

void SpectralPropagator::check(const SpinState& state) const {
  if (state.n_sites() != n_sites())
    throw std::invalid_argument("state has " + std::to_string(state.n_sites()) +
                                " sites, propagator has " + std::to_string(n_sites()));
}

kernels::ModeExpansion SpectralPropagator::expand(const SpinState& state) const {
  check(state);
  kernels::ModeExpansion e;
  e.energies = basis_.energies;
  e.modes = basis_.modes;
  e.coefficients[0] = adjoint_ * state.up;
  e.coefficients[1] = adjoint_ * state.down;
  return e;
}

SpinState SpectralPropagator::evolve(const SpinState& state, double t) const {
  check(state);
  if (t == 0.0) return state;
  Eigen::VectorXcd phases(basis_.energies.size());
  for (Eigen::Index a = 0; a < phases.size(); ++a)
    phases(a) = std::polar(1.0, -basis_.energies(a) * t);
  SpinState out;
  out.up = basis_.modes * phases.cwiseProduct(adjoint_ * state.up);
  out.down = basis_.modes * phases.cwiseProduct(adjoint_ * state.down);
  return out;
}

Eigen::MatrixXcd dense_time_evolution(const Eigen::MatrixXcd& hamiltonian, double t) {
  const Eigen::Index n = hamiltonian.rows();
  const Eigen::MatrixXcd generator = cplx{0.0, -t} * hamiltonian;
  // Scale so the series argument has 1-norm below 1/2.
  const double norm1 = generator.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm1 * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXcd x = scale * generator;
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int order = 1; order <= 40; ++order) {
    term = (term * x) / static_cast<double>(order);
    result += term;
    if (term.cwiseAbs().colwise().sum().maxCoeff() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

SpinState evolve_dense_oracle(const HamiltonianMatrix& hamiltonian, const SpinState& state,
                              double t) {
  const int n = hamiltonian.dimension();
  if (n > 64) throw std::invalid_argument("dense oracle is limited to N <= 64");
  if (state.n_sites() != n) throw std::invalid_argument("state dimension mismatch");
  const Eigen::MatrixXcd u = dense_time_evolution(hamiltonian.entries, t);
  return SpinState(u * state.up, u * state.down);
}

SpinState translate(const SpinState& state, const LatticeSpec& lattice, double x0) {
  lattice.validate();
  if (lattice.topology != Topology::Ring)
    throw std::invalid_argument("translation is a symmetry of the ring only");
  const int n = lattice.n_sites;
  if (state.n_sites() != n) throw std::invalid_argument("state dimension mismatch");

  if (x0 == std::floor(x0) && std::abs(x0) < 1e15) {
    const long shift = ((static_cast<long>(x0) % n) + n) % n;
    SpinState out(n);
    for (int j = 0; j < n; ++j) {
      out.up((j + shift) % n) = state.up(j);
      out.down((j + shift) % n) = state.down(j);
    }
    return out;
  }

  // Plane waves do not depend on the flux; any ring basis of this size will do.
  const EigenBasis waves = eigensystem(make_ring(n));
  Eigen::VectorXcd shift(n);
  for (int a = 0; a < n; ++a) shift(a) = std::polar(1.0, -waves.labels[a] * x0);
  SpinState out;
  out.up = waves.modes * shift.cwiseProduct(waves.modes.adjoint() * state.up);
  out.down = waves.modes * shift.cwiseProduct(waves.modes.adjoint() * state.down);
  return out;
}

double AnalyticSpreadParams::width(double t) const {
  const double a2 = alpha0 * alpha0;
  return alpha0 / std::sqrt(1.0 + 4.0 * a2 * a2 * hopping * hopping * t * t);
}

double AnalyticSpreadParams::center(double t) const { return center0 + 2.0 * hopping * k0 * t; }

double AnalyticSpreadParams::phase(double x, double t) const {
  const double ap = width(t);
  const double d = x - center(t);
  return k0 * x + 2.0 * hopping * t - hopping * k0 * k0 * t +
         hopping * t * d * d * alpha0 * alpha0 * ap * ap;
}

cplx AnalyticSpreadParams::amplitude(double x, double t) const {
  const double ap = width(t);
  const double d = x - center(t);
  return std::exp(-0.5 * ap * ap * d * d) * std::polar(1.0, phase(x, t));
}

SpinState analytic_spread_packet(const AnalyticSpreadParams& params, int n_sites, double t) {
  if (!(params.alpha0 > 0.0)) throw std::invalid_argument("alpha must be positive");
  SpinState out(n_sites);
  for (int j = 1; j <= n_sites; ++j) out.up(j - 1) = params.amplitude(j, t);
  out.up /= out.up.norm();
  return out;
}

ReflectedCoordinate reflect_map(double coordinate, int n_sites) {
  const double span = n_sites + 1.0;
  const double crossings = std::floor(coordinate / span);
  const auto m = static_cast<long>(crossings);
  ReflectedCoordinate out;
  out.reflections = m < 0 ? -m : m;
  out.phase_flip = (out.reflections % 2) == 1;
  out.coordinate = out.phase_flip ? (crossings + 1.0) * span - coordinate
                                  : coordinate - crossings * span;
  return out;
}

}  // namespace blochring
