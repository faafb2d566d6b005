#include "blochring/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace blochring {

std::string_view to_string(Topology topology) {
  return topology == Topology::Ring ? "ring" : "chain";
}

Topology parse_topology(std::string_view text) {
  if (text == "ring") return Topology::Ring;
  if (text == "chain") return Topology::Chain;
  throw std::invalid_argument("unknown topology '" + std::string(text) +
                              "' (expected ring or chain)");
}

double LatticeSpec::bond_phase() const { return 2.0 * kPi * flux / n_sites; }

void LatticeSpec::validate() const {
  if (n_sites < 3)
    throw std::invalid_argument("n_sites must be >= 3, got " + std::to_string(n_sites));
  if (!(hopping > 0.0)) throw std::invalid_argument("hopping must be positive");
  if (!std::isfinite(flux)) throw std::invalid_argument("flux must be finite");
  if (topology == Topology::Chain && flux != 0.0)
    throw std::invalid_argument("an open chain cannot carry flux");
}

LatticeSpec make_ring(int n_sites, double flux, double hopping) {
  LatticeSpec spec{Topology::Ring, n_sites, hopping, flux};
  spec.validate();
  return spec;
}

LatticeSpec make_chain(int n_sites, double hopping) {
  LatticeSpec spec{Topology::Chain, n_sites, hopping, 0.0};
  spec.validate();
  return spec;
}

HamiltonianMatrix build_hamiltonian(const LatticeSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  const cplx forward = -spec.hopping * std::polar(1.0, spec.bond_phase());
  const int bonds = spec.topology == Topology::Ring ? n : n - 1;
  for (int j = 0; j < bonds; ++j) {
    const int next = (j + 1) % n;
    h(j, next) += forward;
    h(next, j) += std::conj(forward);
  }
  return {std::move(h)};
}

std::vector<double> momentum_grid(const LatticeSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  std::vector<double> ks;
  ks.reserve(n);
  if (spec.topology == Topology::Ring) {
    for (int m = -(n / 2); m < n - n / 2; ++m) ks.push_back(2.0 * kPi * m / n);
  } else {
    for (int l = 1; l <= n; ++l) ks.push_back(kPi * l / (n + 1));
  }
  return ks;
}

namespace {

double band_energy(const LatticeSpec& spec, double k) {
  if (spec.topology == Topology::Ring)
    return -2.0 * spec.hopping * std::cos(k + spec.bond_phase());
  return -2.0 * spec.hopping * std::cos(k);
}

}  // namespace

double dispersion(const LatticeSpec& spec, double k) {
  const auto grid = momentum_grid(spec);
  const double step = spec.topology == Topology::Ring ? 2.0 * kPi / spec.n_sites
                                                      : kPi / (spec.n_sites + 1);
  const auto near = std::find_if(grid.begin(), grid.end(), [&](double g) {
    return std::abs(g - k) <= 1e-9 * step;
  });
  if (near == grid.end())
    throw std::invalid_argument("momentum " + std::to_string(k) +
                                " is not on the lattice momentum grid");
  return band_energy(spec, *near);
}

EigenBasis eigensystem(const LatticeSpec& spec) {
  const auto ks = momentum_grid(spec);
  const int n = spec.n_sites;
  EigenBasis basis;
  basis.energies.resize(n);
  basis.modes.resize(n, n);
  basis.labels = ks;
  if (spec.topology == Topology::Ring) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (int a = 0; a < n; ++a) {
      const int m = a - n / 2;
      basis.energies(a) = band_energy(spec, ks[a]);
      for (int j = 1; j <= n; ++j) {
        // Reduce m*j mod N first so the phase argument stays small and exact.
        const long long r = ((static_cast<long long>(m) * j) % n + n) % n;
        basis.modes(j - 1, a) = norm * std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / n);
      }
    }
  } else {
    const double norm = std::sqrt(2.0 / (n + 1));
    for (int a = 0; a < n; ++a) {
      const int l = a + 1;
      basis.energies(a) = band_energy(spec, ks[a]);
      for (int i = 1; i <= n; ++i) {
        const long long r = (static_cast<long long>(l) * i) % (2 * (n + 1));
        basis.modes(i - 1, a) = norm * std::sin(kPi * static_cast<double>(r) / (n + 1));
      }
    }
  }
  return basis;
}

EigenBasis numeric_eigensystem(const HamiltonianMatrix& hamiltonian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian.entries);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("Hermitian eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors(), {}};
}

double quantized_flux(int n, int n_sites) { return (0.5 * n + 0.25) * n_sites; }

double linear_velocity(int n, double hopping) {
  return (n % 2 == 0 ? 2.0 : -2.0) * hopping;
}

double projector_discrepancy(const EigenBasis& a, const EigenBasis& b, double degeneracy_tol) {
  const int n = a.dimension();
  if (b.dimension() != n) throw std::invalid_argument("basis dimensions differ");
  auto sorted_order = [](const Eigen::VectorXd& e) {
    std::vector<int> idx(e.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return e(x) < e(y); });
    return idx;
  };
  const auto ia = sorted_order(a.energies);
  const auto ib = sorted_order(b.energies);
  double worst = 0.0;
  int start = 0;
  while (start < n) {
    int stop = start + 1;
    while (stop < n && a.energies(ia[stop]) - a.energies(ia[stop - 1]) < degeneracy_tol) ++stop;
    Eigen::MatrixXcd pa = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd pb = Eigen::MatrixXcd::Zero(n, n);
    for (int s = start; s < stop; ++s) {
      pa += a.modes.col(ia[s]) * a.modes.col(ia[s]).adjoint();
      pb += b.modes.col(ib[s]) * b.modes.col(ib[s]).adjoint();
    }
    worst = std::max(worst, (pa - pb).cwiseAbs().maxCoeff());
    start = stop;
  }
  return worst;
}

}  // namespace blochring
