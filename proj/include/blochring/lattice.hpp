#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace blochring {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class Topology { Ring, Chain };

std::string_view to_string(Topology topology);
Topology parse_topology(std::string_view text);

/// Geometry and field of a one-dimensional tight-binding lattice.
///
/// Sites are labelled 1..N. Flux is measured in flux quanta and threads the
/// ring; an open chain carries no flux. Energies are in units of the hopping
/// J and times in units of 1/J (hbar = 1, lattice spacing = 1).
struct LatticeSpec {
  Topology topology = Topology::Ring;
  int n_sites = 0;
  double hopping = 1.0;
  double flux = 0.0;

  /// Peierls phase 2*pi*flux/N carried by each forward bond.
  double bond_phase() const;

  /// Throws std::invalid_argument when N < 3, J <= 0 or a chain has flux.
  void validate() const;
};

LatticeSpec make_ring(int n_sites, double flux = 0.0, double hopping = 1.0);
LatticeSpec make_chain(int n_sites, double hopping = 1.0);

/// Dense single-particle Hamiltonian in the site basis (row/column i is site i+1).
struct HamiltonianMatrix {
  Eigen::MatrixXcd entries;

  int dimension() const { return static_cast<int>(entries.rows()); }
};

HamiltonianMatrix build_hamiltonian(const LatticeSpec& spec);

/// Eigenvalues and orthonormal eigenvectors (columns of `modes`).
///
/// For analytically constructed bases `labels` holds the momentum (ring) or
/// pseudo-momentum (chain) of each mode; numeric bases leave it empty.
struct EigenBasis {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd modes;
  std::vector<double> labels;

  int dimension() const { return static_cast<int>(modes.rows()); }
};

/// Allowed momenta. Ring: 2*pi*m/N for m = -floor(N/2) .. ceil(N/2)-1.
/// Chain: pi*l/(N+1) for l = 1..N.
std::vector<double> momentum_grid(const LatticeSpec& spec);

/// Band energy at an on-grid momentum; throws for k off the grid.
double dispersion(const LatticeSpec& spec, double k);

/// Plane waves (ring) or standing sine waves (chain), built in closed form.
EigenBasis eigensystem(const LatticeSpec& spec);

/// Generic dense Hermitian diagonalization, used to cross-check `eigensystem`.
EigenBasis numeric_eigensystem(const HamiltonianMatrix& hamiltonian);

/// Flux (n/2 + 1/4) N at which the band is linear around k = 0.
double quantized_flux(int n, int n_sites);

/// Velocity (-1)^n 2J of the linear regime reached at quantized_flux(n, N).
double linear_velocity(int n, double hopping = 1.0);

/// Largest difference between the spectral projectors of two bases, compared
/// over clusters of (near-)degenerate energies. Energies must agree as sets.
double projector_discrepancy(const EigenBasis& a, const EigenBasis& b,
                             double degeneracy_tol = 1e-8);

}  // namespace blochring
