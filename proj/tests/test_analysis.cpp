#include "blochring/analysis.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace blochring;

namespace {

std::vector<double> fringed(int n, double period, double depth) {
  std::vector<double> d(n);
  for (int j = 0; j < n; ++j) {
    const double env = std::exp(-std::pow((j - 0.5 * n) / (0.2 * n), 2));
    d[j] = env * (1.0 + depth * std::cos(2.0 * kPi * j / period + 0.3));
  }
  return d;
}

}  // namespace

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(250.0, 2501);
  CHECK(g.size() == 2501);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 250.0);
  CHECK(g[10] == doctest::Approx(1.0));
  CHECK_THROWS(uniform_grid(1.0, 1));
  CHECK_THROWS(uniform_grid(-1.0, 5));
}

TEST_CASE("time series validation") {
  TimeSeries s{{0.0, 1.0, 1.0}, {1.0, 1.0, 1.0}};
  CHECK_THROWS(s.validate());
  TimeSeries lengths{{0.0, 1.0}, {1.0}};
  CHECK_THROWS(lengths.validate());
}

TEST_CASE("autocorrelation of a state with itself") {
  PacketSpec p;
  p.alpha = 0.2;
  p.center = 20.0;
  p.spin_weights = bloch_spinor(1.0, 2.0);
  const auto s = gaussian_packet(make_ring(40), p);
  CHECK(autocorrelation(s, s) == doctest::Approx(1.0).epsilon(1e-14));
  auto flipped = s;
  flipped.down = -flipped.down;
  CHECK(autocorrelation(s, flipped) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("fringe measurement on synthetic profiles") {
  for (double period : {10.0, 11.35, 7.0}) {
    const auto d = fringed(200, period, 0.5);
    const auto m = fringe_measure(d);
    CAPTURE(period);
    CHECK(m.found);
    CHECK(m.period == doctest::Approx(period).epsilon(0.02));
  }
  const std::vector<double> flat(100, 0.01);
  CHECK_FALSE(fringe_measure(flat).found);
  CHECK_THROWS(fringe_measure(std::vector<double>(8, 1.0)));
}

TEST_CASE("fringe prediction for a spreading packet on a 100-site ring") {
  // alpha' = 0.3 / sqrt(1 + 4 * 0.3^4 * 90^2) = 0.018483, N_c = 50 + 2 * 0.05 pi * 90
  const auto profile = fringe_predict(0.3, 0.05 * kPi, 50.0, make_ring(100), 90.0);
  CHECK(profile.packet_center == doctest::Approx(78.2743).epsilon(1e-5));
  CHECK(profile.wavevector == doctest::Approx(0.553455).epsilon(1e-4));
  CHECK(profile.period == doctest::Approx(11.3526).epsilon(1e-3));
  CHECK(profile.seam == doctest::Approx(28.2743).epsilon(1e-5));
  CHECK(profile.sites.size() == 100);
  double total = 0.0;
  for (double v : profile.density) {
    CHECK(v >= -1e-15);
    total += v;
  }
  CHECK(total == doctest::Approx(1.0));

  const auto measured = fringe_measure(profile.density);
  CHECK(measured.found);
  CHECK(measured.period == doctest::Approx(profile.period).epsilon(0.05));

  const auto region = interference_region(profile);
  CHECK(region.size() == 50);
  CHECK(region.front() == 4);

  CHECK_THROWS(fringe_predict(0.3, 0.0, 50.0, make_chain(100), 90.0));
  const auto early = fringe_predict(0.3, 0.0, 50.0, make_ring(100), 1.0);
  CHECK_FALSE(early.warnings.empty());
}

TEST_CASE("pearson correlation") {
  const std::vector<double> a = {1, 2, 3, 4, 5};
  const std::vector<double> b = {2, 4, 6, 8, 10};
  const std::vector<double> c = {5, 4, 3, 2, 1};
  const std::vector<double> d = {1, 3, 2, 5, 4};
  CHECK(pearson_correlation(a, b) == doctest::Approx(1.0));
  CHECK(pearson_correlation(a, c) == doctest::Approx(-1.0));
  CHECK(pearson_correlation(a, d) == doctest::Approx(0.8));
  CHECK_THROWS(pearson_correlation(a, std::vector<double>{1, 2}));
}

TEST_CASE("revival predictions") {
  using R = DispersionRegime;
  CHECK(revival_predict(make_ring(100), R::Linear, false).time == 50.0);
  CHECK(revival_predict(make_ring(100), R::Quadratic, false).time == doctest::Approx(1591.549));
  CHECK(revival_predict(make_chain(100), R::Linear, false).time == 101.0);
  CHECK(revival_predict(make_chain(100), R::Quadratic, false).time == doctest::Approx(6494.159));
  const auto centered = revival_predict(make_chain(100), R::Quadratic, true);
  CHECK(centered.time == doctest::Approx(811.7699));
  CHECK(centered.mechanism == RevivalMechanism::ParityReducedRevival);
  CHECK(centered.note.empty());
  CHECK_FALSE(revival_predict(make_ring(100), R::Quadratic, true).note.empty());
  CHECK(revival_predict(make_ring(100, 0.0, 2.0), R::Linear, false).time == 25.0);
}

TEST_CASE("peak detection on cos^2") {
  const auto t = uniform_grid(20.0, 2001);
  TimeSeries s;
  s.times = t;
  for (double x : t) s.values.push_back(std::cos(x) * std::cos(x));
  const auto peaks = revival_detect(s, 0.8);
  REQUIRE(peaks.size() == 6);  // pi .. 6 pi
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    CHECK(peaks[i].time == doctest::Approx(kPi * (i + 1)).epsilon(1e-6));
    CHECK(peaks[i].value == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK(revival_detect(s, 1.01).empty());

  const auto best = strongest_peak(s, 5.0, 8.0);
  REQUIRE(best.has_value());
  CHECK(best->time == doctest::Approx(2.0 * kPi).epsilon(1e-6));
  CHECK_FALSE(strongest_peak(s, 30.0, 40.0).has_value());
}

TEST_CASE("spin reduced state") {
  SpinState s(4);
  s.up(1) = 1.0 / std::sqrt(2.0);
  s.down(1) = 1.0 / std::sqrt(2.0);
  auto rho = spin_reduced_state(s);
  CHECK(std::abs(rho(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(rho(0, 1) - 0.5) < 1e-15);
  auto b = bloch_vector(rho);
  CHECK(b(0) == doctest::Approx(1.0));
  CHECK(std::abs(b(1)) < 1e-15);
  CHECK(std::abs(b(2)) < 1e-15);

  // up and down on different sites: no coherence, Bloch vector at the origin
  SpinState mixed(4);
  mixed.up(0) = 1.0 / std::sqrt(2.0);
  mixed.down(3) = 1.0 / std::sqrt(2.0);
  b = bloch_vector(spin_reduced_state(mixed));
  CHECK(b.norm() < 1e-15);

  SpinState s2(3);
  s2.up(0) = cplx(0.6, 0.0);
  s2.down(0) = cplx(0.0, 0.8);
  rho = spin_reduced_state(s2);
  CHECK(std::abs(rho(1, 0) - cplx(0.0, 0.48)) < 1e-15);
  CHECK(std::abs(rho(0, 1) - cplx(0.0, -0.48)) < 1e-15);
  b = bloch_vector(rho);
  CHECK(b(1) == doctest::Approx(0.96));
  CHECK(b(2) == doctest::Approx(0.36 - 0.64));
}

TEST_CASE("transfer fidelity") {
  const auto ring = make_ring(100, 25.0);
  const SpectralPropagator prop(ring);
  TransferSetup setup;
  setup.alpha = 0.1;
  setup.source = 50.0;
  setup.target = 50.0;
  CHECK(transfer_fidelity(0.7, 1.9, ring, setup, 0.0, prop) == doctest::Approx(1.0).epsilon(1e-12));
  // at the quarter flux the packet moves at v = 2J without spin dependence
  setup.target = 75.0;
  const double f0 = transfer_fidelity(0.0, 0.0, ring, setup, 12.5, prop);
  const double f1 = transfer_fidelity(2.1, 0.4, ring, setup, 12.5, prop);
  CHECK(f0 > 0.999);
  CHECK(f0 == doctest::Approx(f1).epsilon(1e-12));
  setup.target = 45.0;
  CHECK(transfer_fidelity(0.0, 0.0, ring, setup, 12.5, prop) < 0.2);
}

TEST_CASE("density peak") {
  const std::vector<double> d = {0.0, 1.0, 3.0, 1.0, 0.0};
  CHECK(density_peak(d, false) == 2.0);
  const std::vector<double> skew = {0.0, 2.0, 3.0, 0.0, 0.0};
  CHECK(density_peak(skew, false) == doctest::Approx(1.75));
  const std::vector<double> wrap = {3.0, 1.0, 0.0, 0.0, 1.0};
  CHECK(density_peak(wrap, true) == 0.0);
  CHECK(density_peak(wrap, false) == 0.0);
}

TEST_CASE("chain packet tracking through a wall") {
  const auto chain = make_chain(100);
  const SpectralPropagator prop(chain);
  PacketSpec p;
  p.alpha = 0.1;
  p.k0 = kPi / 2;
  p.center = 30.0;
  const auto s = gaussian_packet(chain, p);
  auto r = chain_packet_position(prop, s, 0.0);
  CHECK(r.coordinate == doctest::Approx(30.0).epsilon(0.01));
  r = chain_packet_position(prop, s, 10.0);
  CHECK(std::abs(r.coordinate - 50.0) < 2.0);
  CHECK_FALSE(r.phase_flip);
  r = chain_packet_position(prop, s, 50.0);  // virtual 130 folds to 72
  CHECK(std::abs(r.coordinate - 72.0) < 2.0);
  CHECK(r.phase_flip);
  CHECK(r.reflections == 1);
}
