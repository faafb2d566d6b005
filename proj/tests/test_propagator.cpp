#include "blochring/analysis.hpp"
#include "blochring/propagator.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace blochring;

namespace {

SpinState random_state(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  SpinState s(n);
  for (int j = 0; j < n; ++j) {
    s.up(j) = {nd(rng), nd(rng)};
    s.down(j) = {nd(rng), nd(rng)};
  }
  const double norm = std::sqrt(s.norm_squared());
  s.up /= norm;
  s.down /= norm;
  return s;
}

double distance(const SpinState& a, const SpinState& b) {
  return std::sqrt((a.up - b.up).squaredNorm() + (a.down - b.down).squaredNorm());
}

double energy(const HamiltonianMatrix& h, const SpinState& s) {
  return (s.up.dot(h.entries * s.up) + s.down.dot(h.entries * s.down)).real();
}

PacketSpec packet(double alpha, double k0, double center) {
  PacketSpec p;
  p.alpha = alpha;
  p.k0 = k0;
  p.center = center;
  return p;
}

}  // namespace

TEST_CASE("three-site chain started in the middle") {
  // exp(-iHt)|2> = cos(sqrt2 t)|2> + i sin(sqrt2 t)(|1> + |3>)/sqrt2
  const auto chain = make_chain(3);
  const SpectralPropagator prop(chain);
  const auto start = SpinState::site(3, 2);
  for (double t : {0.0, 0.4, 1.0, 2.2, 17.3}) {
    const auto s = prop.evolve(start, t);
    const double r2 = std::sqrt(2.0);
    CHECK(std::abs(s.up(1) - cplx(std::cos(r2 * t), 0.0)) < 1e-13);
    CHECK(std::abs(s.up(0) - cplx(0.0, std::sin(r2 * t) / r2)) < 1e-13);
    CHECK(std::abs(s.up(2) - cplx(0.0, std::sin(r2 * t) / r2)) < 1e-13);
    CHECK(s.down.norm() == 0.0);
  }
}

TEST_CASE("zero time returns the input") {
  const auto s = random_state(20, 3);
  const SpectralPropagator prop(make_ring(20, 4.2));
  const auto same = prop.evolve(s, 0.0);
  CHECK(same.up == s.up);
  CHECK(same.down == s.down);
}

TEST_CASE("spectral propagation agrees with the dense matrix exponential") {
  unsigned seed = 1;
  for (int n : {3, 4, 16, 64}) {
    for (const auto& spec : {make_ring(n), make_ring(n, 0.25 * n), make_ring(n, 0.61 * n), make_chain(n)}) {
      const SpectralPropagator prop(spec);
      const auto h = build_hamiltonian(spec);
      const auto s = random_state(n, seed++);
      for (double t : {0.3, 7.0, 40.0}) {
        CAPTURE(n);
        CAPTURE(t);
        CHECK(distance(prop.evolve(s, t), evolve_dense_oracle(h, s, t)) < 1e-10);
      }
    }
  }
}

TEST_CASE("dense oracle limits") {
  const auto h = build_hamiltonian(make_ring(65));
  CHECK_THROWS_AS(evolve_dense_oracle(h, SpinState(65), 1.0), std::invalid_argument);
  const Eigen::MatrixXcd u = dense_time_evolution(build_hamiltonian(make_ring(8, 1.3)).entries, 12.5);
  CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("evolution is unitary, composes and conserves energy") {
  const auto spec = make_ring(100, 25.0);
  const SpectralPropagator prop(spec);
  const auto h = build_hamiltonian(spec);
  const auto s = random_state(100, 42);
  const double e0 = energy(h, s);
  for (double t : {1.0, 33.3, 250.0, 5000.0}) {
    const auto st = prop.evolve(s, t);
    CHECK(std::abs(st.norm_squared() - 1.0) < 1e-12);
    CHECK(std::abs(energy(h, st) - e0) < 1e-11);
  }
  CHECK(distance(prop.evolve(prop.evolve(s, 12.0), 30.5), prop.evolve(s, 42.5)) < 1e-11);
  CHECK(distance(prop.evolve(prop.evolve(s, 19.0), -19.0), s) < 1e-12);
}

TEST_CASE("spin components evolve independently") {
  const auto spec = make_ring(40, 7.0);
  const SpectralPropagator prop(spec);
  auto s = random_state(40, 5);
  auto only_up = s;
  only_up.down.setZero();
  const auto full = prop.evolve(s, 9.0);
  const auto up = prop.evolve(only_up, 9.0);
  CHECK((full.up - up.up).norm() < 1e-14);
  CHECK(up.down.norm() == 0.0);
}

TEST_CASE("dimension mismatch is rejected") {
  const SpectralPropagator prop(make_ring(10));
  CHECK_THROWS_AS(prop.evolve(SpinState(11), 1.0), std::invalid_argument);
}

TEST_CASE("flux acts as a momentum boost") {
  // phi = 25 on 100 sites is gauge-equivalent to a zero-flux packet with k0 = pi/2
  const double alpha = 0.1;
  const auto threaded = make_ring(100, 25.0);
  const auto plain = make_ring(100);
  const SpectralPropagator pt(threaded), pp(plain);
  const auto a = gaussian_packet(threaded, packet(alpha, 0.0, 50.0));
  const auto b = gaussian_packet(plain, packet(alpha, kPi / 2, 50.0));
  for (double t : {5.0, 50.0, 130.0}) {
    const Eigen::VectorXd da = pt.evolve(a, t).site_density();
    const Eigen::VectorXd db = pp.evolve(b, t).site_density();
    CHECK((da - db).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("integer translation is a cyclic permutation") {
  const auto spec = make_ring(12, 2.5);
  const auto s = random_state(12, 9);
  for (int shift : {0, 1, 5, 12, -3, 25}) {
    const auto moved = translate(s, spec, shift);
    for (int j = 0; j < 12; ++j) {
      const int to = ((j + shift) % 12 + 12) % 12;
      CHECK(moved.up(to) == s.up(j));
      CHECK(moved.down(to) == s.down(j));
    }
  }
  CHECK_THROWS_AS(translate(s, make_chain(12), 1.0), std::invalid_argument);
}

TEST_CASE("fractional translations compose and commute with evolution") {
  const auto spec = make_ring(31, 3.0);
  const SpectralPropagator prop(spec);
  const auto s = random_state(31, 21);
  const auto ab = translate(translate(s, spec, 0.3), spec, 1.45);
  CHECK(distance(ab, translate(s, spec, 1.75)) < 1e-12);
  CHECK(std::abs(translate(s, spec, 0.37).norm_squared() - 1.0) < 1e-12);
  CHECK(distance(prop.evolve(translate(s, spec, 2.6), 8.0), translate(prop.evolve(s, 8.0), spec, 2.6)) <
        1e-12);
  // half-site shift of a smooth packet moves its peak by half a site
  const auto g = gaussian_packet(make_ring(101), packet(0.2, 0.0, 40.0));
  const auto gm = translate(g, make_ring(101), 0.5);
  const Eigen::VectorXd d = gm.site_density();
  CHECK(density_peak({d.data(), static_cast<std::size_t>(d.size())}, true) ==
        doctest::Approx(39.5).epsilon(1e-3));
}

TEST_CASE("analytic spreading packet formulas") {
  AnalyticSpreadParams p;
  p.alpha0 = 0.1;
  p.k0 = 0.05;
  p.center0 = 200.0;
  p.hopping = 1.0;
  CHECK(p.width(0.0) == 0.1);
  CHECK(p.width(50.0) == doctest::Approx(0.1 / std::sqrt(1.0 + 4e-4 * 2500.0)));
  CHECK(p.center(10.0) == doctest::Approx(201.0));
  CHECK(p.phase(200.0, 0.0) == doctest::Approx(10.0));
  CHECK(std::abs(p.amplitude(200.0, 0.0)) == doctest::Approx(1.0));
}

TEST_CASE("analytic spreading packet matches exact evolution near the band bottom") {
  const int n = 400;
  const auto ring = make_ring(n);
  const SpectralPropagator prop(ring);
  for (double k0 : {0.0, 0.05}) {
    AnalyticSpreadParams p;
    p.alpha0 = 0.1;
    p.k0 = k0;
    p.center0 = 150.0;
    const auto start = gaussian_packet(ring, packet(p.alpha0, k0, p.center0));
    for (double t : {10.0, 50.0, 100.0}) {
      CAPTURE(k0);
      CAPTURE(t);
      const auto exact = prop.evolve(start, t);
      const auto model = analytic_spread_packet(p, n, t);
      const double overlap = std::abs(model.up.dot(exact.up));
      CHECK(overlap > 1.0 - 5e-3);
      CHECK((exact.site_density() - model.site_density()).cwiseAbs().maxCoeff() < 5e-3);
    }
  }
}

TEST_CASE("reflection map") {
  const int n = 10;  // walls at 0 and 11
  auto r = reflect_map(5.0, n);
  CHECK(r.coordinate == 5.0);
  CHECK_FALSE(r.phase_flip);
  CHECK(r.reflections == 0);

  r = reflect_map(13.0, n);
  CHECK(r.coordinate == 9.0);
  CHECK(r.phase_flip);
  CHECK(r.reflections == 1);

  r = reflect_map(-3.0, n);
  CHECK(r.coordinate == 3.0);
  CHECK(r.phase_flip);
  CHECK(r.reflections == 1);

  r = reflect_map(25.0, n);
  CHECK(r.coordinate == 3.0);
  CHECK_FALSE(r.phase_flip);
  CHECK(r.reflections == 2);

  r = reflect_map(11.0, n);
  CHECK(r.coordinate == 11.0);

  // folding is continuous across the walls
  for (double x = -40.0; x < 40.0; x += 0.25) {
    const double a = reflect_map(x, n).coordinate;
    const double b = reflect_map(x + 0.25, n).coordinate;
    CHECK(std::abs(a - b) == doctest::Approx(0.25));
    CHECK(a >= 0.0);
    CHECK(a <= 11.0);
  }
}
