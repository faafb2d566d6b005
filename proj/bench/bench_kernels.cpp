// Serial reference vs OpenMP sampling kernels on a 100-site ring.

#include "blochring/analysis.hpp"
#include "blochring/kernels.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

using namespace blochring;
using h_clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& body, int repeats) {
  const auto t1 = h_clock::now();
  for (int r = 0; r < repeats; ++r) body();
  const auto t2 = h_clock::now();
  return std::chrono::duration<double, std::milli>(t2 - t1).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
  const int n_sites = argc > 1 ? std::atoi(argv[1]) : 100;
  const int samples = argc > 2 ? std::atoi(argv[2]) : 2000;

  const LatticeSpec ring = make_ring(n_sites, 0.25 * n_sites);
  const SpectralPropagator prop(ring);
  PacketSpec packet;
  packet.alpha = 0.1;
  packet.center = 0.5 * n_sites;
  const auto expansion = prop.expand(gaussian_packet(ring, packet));
  const auto times = uniform_grid(250.0, samples);

  std::vector<double> a_serial(times.size()), a_parallel(times.size());
  Eigen::MatrixXd d_serial, d_parallel;

  std::printf("N = %d, samples = %d, threads = %d\n", n_sites, samples, omp_get_max_threads());
  const double t_as = time_ms([&] { kernels::serial::autocorrelation(expansion, times, a_serial); }, 3);
  const double t_ap = time_ms([&] { kernels::parallel::autocorrelation(expansion, times, a_parallel); }, 3);
  const double t_ds = time_ms([&] { kernels::serial::density_series(expansion, times, d_serial); }, 3);
  const double t_dp = time_ms([&] { kernels::parallel::density_series(expansion, times, d_parallel); }, 3);

  double a_diff = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) a_diff = std::max(a_diff, std::abs(a_serial[i] - a_parallel[i]));
  const double d_diff = (d_serial - d_parallel).cwiseAbs().maxCoeff();

  std::printf("%-16s %12s %12s %10s %12s\n", "kernel", "serial ms", "openmp ms", "speedup", "max |diff|");
  std::printf("%-16s %12.3f %12.3f %10.2f %12.3g\n", "autocorrelation", t_as, t_ap, t_as / t_ap, a_diff);
  std::printf("%-16s %12.3f %12.3f %10.2f %12.3g\n", "density_series", t_ds, t_dp, t_ds / t_dp, d_diff);
  return 0;
}
