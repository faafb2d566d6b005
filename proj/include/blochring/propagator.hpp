#pragma once

#include "blochring/kernels.hpp"
#include "blochring/lattice.hpp"
#include "blochring/wavepacket.hpp"

namespace blochring {

/// Exact time evolution exp(-iHt) in the eigenbasis of a lattice Hamiltonian.
/// Both spin components evolve under the same unitary.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(EigenBasis basis);
  explicit SpectralPropagator(const LatticeSpec& lattice);

  const EigenBasis& basis() const { return basis_; }
  int n_sites() const { return basis_.dimension(); }

  SpinState evolve(const SpinState& state, double t) const;

  /// Mode coefficients <mode_a|psi_s> of both spin components.
  kernels::ModeExpansion expand(const SpinState& state) const;

 private:
  void check(const SpinState& state) const;

  EigenBasis basis_;
  Eigen::MatrixXcd adjoint_;
};

/// exp(-iHt) applied by scaling-and-squaring of a Taylor series on the dense
/// matrix. Independent of every eigensolver path; limited to N <= 64.
SpinState evolve_dense_oracle(const HamiltonianMatrix& hamiltonian, const SpinState& state,
                              double t);

/// Matrix exponential exp(-iHt) used by `evolve_dense_oracle`.
Eigen::MatrixXcd dense_time_evolution(const Eigen::MatrixXcd& hamiltonian, double t);

/// Ring translation T(x0)|j> = |j + x0>, applied as exp(-i k x0) on each
/// plane-wave component. Integer shifts are exact cyclic permutations;
/// fractional shifts give the band-limited interpolation on the symmetric
/// momentum window.
SpinState translate(const SpinState& state, const LatticeSpec& lattice, double x0);

/// Closed-form free-particle Gaussian for the quadratic band -2J + J k^2, on an
/// unbounded lattice.
struct AnalyticSpreadParams {
  double alpha0 = 0.1;
  double k0 = 0.0;
  double center0 = 1.0;
  double hopping = 1.0;

  /// alpha' = alpha / sqrt(1 + 4 alpha^4 J^2 t^2)
  double width(double t) const;
  /// N_c = N_A + 2 J k0 t
  double center(double t) const;
  /// k0 x + 2Jt - J k0^2 t + J t (x - N_c)^2 alpha^2 alpha'^2
  double phase(double x, double t) const;
  /// Unnormalized amplitude exp(-alpha'^2 (x - N_c)^2 / 2) exp(i phase).
  cplx amplitude(double x, double t) const;
};

/// Spin-up state with the analytic envelope and phase on sites 1..N, normalized.
SpinState analytic_spread_packet(const AnalyticSpreadParams& params, int n_sites, double t);

struct ReflectedCoordinate {
  double coordinate = 0.0;
  bool phase_flip = false;
  long reflections = 0;
};

/// Folds a virtual (unbounded) packet center back onto the open chain. The
/// walls sit at the virtual sites 0 and N+1; every wall crossing mirrors the
/// coordinate and flips the sign of the packet.
ReflectedCoordinate reflect_map(double coordinate, int n_sites);

}  // namespace blochring
