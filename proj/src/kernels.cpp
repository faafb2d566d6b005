#include "blochring/kernels.hpp"

#include <complex>
#include <stdexcept>

namespace blochring::kernels {

namespace {

using cplx = std::complex<double>;

void check_sizes(std::span<const double> times, std::span<double> out) {
  if (times.size() != out.size())
    throw std::invalid_argument("output span must match the time grid");
}

// psi_s(j) at time t for both spin components.
void reconstruct(const ModeExpansion& e, double t, Eigen::VectorXcd& phased,
                 Eigen::VectorXcd psi[2]) {
  const Eigen::Index n = e.modes.rows();
  const Eigen::Index m = e.modes.cols();
  for (int s = 0; s < 2; ++s) {
    for (Eigen::Index a = 0; a < m; ++a)
      phased(a) = e.coefficients[s](a) * std::polar(1.0, -e.energies(a) * t);
    psi[s].setZero(n);
    for (Eigen::Index a = 0; a < m; ++a) {
      const cplx c = phased(a);
      if (c == cplx{}) continue;
      for (Eigen::Index j = 0; j < n; ++j) psi[s](j) += e.modes(j, a) * c;
    }
  }
}

void density_row(const ModeExpansion& e, double t, Eigen::VectorXcd& phased,
                 Eigen::VectorXcd psi[2], Eigen::MatrixXd& out, Eigen::Index row) {
  reconstruct(e, t, phased, psi);
  for (Eigen::Index j = 0; j < psi[0].size(); ++j)
    out(row, j) = std::norm(psi[0](j)) + std::norm(psi[1](j));
}

}  // namespace

namespace serial {

void autocorrelation(const ModeExpansion& expansion, std::span<const double> times,
                     std::span<double> out) {
  check_sizes(times, out);
  Eigen::VectorXcd initial[2];
  for (int s = 0; s < 2; ++s) initial[s] = expansion.modes * expansion.coefficients[s];
  Eigen::VectorXcd phased(expansion.modes.cols());
  Eigen::VectorXcd psi[2];
  for (std::size_t r = 0; r < times.size(); ++r) {
    reconstruct(expansion, times[r], phased, psi);
    out[r] = std::abs(initial[0].dot(psi[0])) + std::abs(initial[1].dot(psi[1]));
  }
}

void density_series(const ModeExpansion& expansion, std::span<const double> times,
                    Eigen::MatrixXd& out) {
  out.resize(static_cast<Eigen::Index>(times.size()), expansion.modes.rows());
  Eigen::VectorXcd phased(expansion.modes.cols());
  Eigen::VectorXcd psi[2];
  for (std::size_t r = 0; r < times.size(); ++r)
    density_row(expansion, times[r], phased, psi, out, static_cast<Eigen::Index>(r));
}

}  // namespace serial

namespace parallel {

void autocorrelation(const ModeExpansion& expansion, std::span<const double> times,
                     std::span<double> out) {
  check_sizes(times, out);
  const Eigen::VectorXd w_up = expansion.coefficients[0].cwiseAbs2();
  const Eigen::VectorXd w_down = expansion.coefficients[1].cwiseAbs2();
  const Eigen::VectorXd& energies = expansion.energies;
  const Eigen::Index m = energies.size();
  const auto count = static_cast<long>(times.size());

#pragma omp parallel for schedule(static)
  for (long r = 0; r < count; ++r) {
    const double t = times[r];
    cplx a_up{}, a_down{};
    for (Eigen::Index a = 0; a < m; ++a) {
      const cplx phase = std::polar(1.0, -energies(a) * t);
      a_up += w_up(a) * phase;
      a_down += w_down(a) * phase;
    }
    out[r] = std::abs(a_up) + std::abs(a_down);
  }
}

void density_series(const ModeExpansion& expansion, std::span<const double> times,
                    Eigen::MatrixXd& out) {
  out.resize(static_cast<Eigen::Index>(times.size()), expansion.modes.rows());
  const auto count = static_cast<long>(times.size());

#pragma omp parallel
  {
    Eigen::VectorXcd phased(expansion.modes.cols());
    Eigen::VectorXcd psi[2];
#pragma omp for schedule(static)
    for (long r = 0; r < count; ++r) density_row(expansion, times[r], phased, psi, out, r);
  }
}

}  // namespace parallel

}  // namespace blochring::kernels
