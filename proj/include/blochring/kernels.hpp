#pragma once

// Sampling kernels behind the time-series observables.
//
// Every observable sampled over a time grid is independent per grid point, so
// the `parallel` variants split the grid across OpenMP threads. The `serial`
// variants are straightforward reference loops kept for testing and for the
// benchmark; they evaluate the same quantities by the direct route (full
// state reconstruction at each time).

#include <Eigen/Dense>

#include <span>

namespace blochring::kernels {

/// Mode expansion of a two-component state: coefficients[s](a) = <mode_a|psi_s>.
struct ModeExpansion {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd modes;
  Eigen::VectorXcd coefficients[2];
};

namespace serial {

/// |A(t)| = sum_s |<psi_s(0)|psi_s(t)>|, reconstructing psi(t) in the site basis.
void autocorrelation(const ModeExpansion& expansion, std::span<const double> times,
                     std::span<double> out);

/// Row r of `out` receives the site density at times[r]. `out` is resized.
void density_series(const ModeExpansion& expansion, std::span<const double> times,
                    Eigen::MatrixXd& out);

}  // namespace serial

namespace parallel {

/// Same observable as serial::autocorrelation, from spectral weights |c_a|^2
/// in O(N) per sample.
void autocorrelation(const ModeExpansion& expansion, std::span<const double> times,
                     std::span<double> out);

void density_series(const ModeExpansion& expansion, std::span<const double> times,
                    Eigen::MatrixXd& out);

}  // namespace parallel

}  // namespace blochring::kernels
