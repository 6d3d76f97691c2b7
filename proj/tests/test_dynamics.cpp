#include <random>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "ptq/dynamics.hpp"
#include "ptq/model.hpp"

using namespace ptq;
using Catch::Matchers::WithinAbs;

namespace {

const double kPi = std::acos(-1.0);

double rel_error(const Vector& a, const Vector& b) { return (a - b).norm() / b.norm(); }

Vector ideal_two() {
  Vector v(4);
  v << 0.5, 0.5, 0.5, -0.5;
  return v;
}

SystemSpec random_system(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = 1 + rng() % 3;
  SystemSpec s;
  s.coupling_j = 0.5 * u(rng);
  for (std::size_t k = 0; k < n; ++k) {
    const double g = 12.0 * u(rng);
    s.qubits.push_back({g, (rng() % 2) ? g : 12.0 * u(rng), 8.0 * u(rng), 2.0 * u(rng) - 1.0});
  }
  return s;
}

}  // namespace

TEST_CASE("rabi flip under sigma x", "[dynamics]") {
  QubitParams q;
  q.omega = 1.0;
  const auto psi = evolve(build_hamiltonian(SystemSpec::uniform(1, q, 0.0)), StateVector(ground_state(1)), kPi / 2.0);
  CHECK(std::abs(psi.amplitudes(0)) < 1e-14);
  CHECK(std::abs(psi.amplitudes(1) - cplx(0.0, -1.0)) < 1e-14);
  CHECK(psi.time == kPi / 2.0);
}

TEST_CASE("active two-qubit optimum lands on the ideal state", "[dynamics]") {
  const Matrix h = build_hamiltonian(SystemSpec::uniform(2, {12.0, 12.0, 6.2281, 0.0}, 0.001));
  const auto psi = evolve(h, StateVector(ground_state(2)), 1.7997);
  CHECK(overlap(psi.amplitudes, ideal_two()) >= 0.999);
}

TEST_CASE("active two-qubit run at the rounded optimum", "[dynamics][!mayfail]") {
  // Expected to fail: at (6.23, 1.8) the overlap is 0.995; the refined optimum is (6.2281, 1.7997).
  const Matrix h = build_hamiltonian(SystemSpec::uniform(2, {12.0, 12.0, 6.23, 0.0}, 0.001));
  const auto psi = evolve(h, StateVector(ground_state(2)), 1.8);
  CHECK(overlap(psi.amplitudes, ideal_two()) >= 0.999);
}

TEST_CASE("propagators agree with independent oracles", "[dynamics][property]") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ut(0.0, 1.5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto spec = random_system(rng);
    const Matrix h = build_hamiltonian(spec);
    const double t = ut(rng);
    const Vector psi0 = oracle::random_state(rng, static_cast<Eigen::Index>(spec.dimension()));
    const Vector ref = oracle::taylor_expm(oracle::hamiltonian(spec), t) * psi0;
    CAPTURE(trial, t);
    CHECK(rel_error(rk4_propagate(h, psi0, t), ref) < 1e-6);
    CHECK(rel_error(expm_propagator(h, t) * psi0, ref) < 1e-10);
    const Evolver ev(h, Propagator::Auto);
    CHECK(rel_error(ev.evolve(StateVector(psi0), t).amplitudes, ref) < 1e-8);
  }
}

TEST_CASE("fidelity examples", "[dynamics]") {
  const Vector ideal = ideal_two();
  CHECK_THAT(fidelity(StateVector(ideal), ideal), WithinAbs(1.0, 1e-15));
  CHECK_THAT(fidelity(StateVector(0.5 * ideal), ideal), WithinAbs(0.25, 1e-15));
  CHECK_THROWS_AS(fidelity(StateVector(ideal), 2.0 * ideal), std::invalid_argument);
  CHECK_THROWS_AS(fidelity(StateVector(ground_state(3)), ideal), std::invalid_argument);
}

TEST_CASE("success rate and normalized fidelity", "[dynamics]") {
  const Vector ideal = ideal_two();
  CHECK_THAT(success_rate(StateVector(ideal)), WithinAbs(1.0, 1e-15));
  CHECK(success_rate(StateVector(Vector::Zero(4))) == 0.0);
  CHECK_THAT(normalized_fidelity(StateVector(cplx(0.3, -2.0) * ideal), ideal), WithinAbs(1.0, 1e-14));
  Vector orth(4);
  orth << 0.5, -0.5, 0.5, 0.5;
  CHECK_THAT(normalized_fidelity(StateVector(orth), ideal), WithinAbs(0.0, 1e-15));
}

TEST_CASE("passive two-qubit optimum has high normalized but tiny raw fidelity", "[dynamics]") {
  const Matrix h = build_hamiltonian(SystemSpec::uniform(2, {12.0, 0.0, 3.1518, 0.0}, 0.001));
  const auto psi = evolve(h, StateVector(ground_state(2)), 3.0856);
  const double f = fidelity(psi, ideal_two());
  CAPTURE(f);
  CHECK(f > 1e-18);
  CHECK(f < 1e-16);
  CHECK(normalized_fidelity(psi, ideal_two()) > 0.9);
}

TEST_CASE("three-qubit active optimum survives post-selection", "[dynamics][!mayfail]") {
  // Expected to fail: the pre-normalized weight at the optimum is about 0.57.
  const Matrix h = build_hamiltonian(SystemSpec::uniform(3, {12.0, 12.0, 6.5799, 0.0}, 0.001));
  const double p = success_rate(evolve(h, StateVector(ground_state(3)), 11.5527));
  CAPTURE(p);
  CHECK_THAT(p, WithinAbs(1.0, 0.05));
}

TEST_CASE("hermitian evolution preserves the norm", "[dynamics][property]") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    auto spec = random_system(rng);
    for (auto& q : spec.qubits) q.gamma = q.kappa = 0.0;
    const Evolver ev(build_hamiltonian(spec));
    const Vector psi0 = oracle::random_state(rng, static_cast<Eigen::Index>(spec.dimension()));
    for (double t : {0.1, 1.0, 10.0, 100.0}) CHECK_THAT(ev.evolve(StateVector(psi0), t).amplitudes.norm(), WithinAbs(1.0, 1e-9));
  }
}

TEST_CASE("uncoupled PT-symmetric norm is periodic", "[dynamics][property]") {
  const double eta = pt_frequency(12.0, 6.58);
  CHECK_THAT(2.0 * kPi / eta, WithinAbs(1.163, 0.01));
  const Evolver ev(build_hamiltonian(SystemSpec::uniform(2, {12.0, 12.0, 6.58, 0.0}, 0.0)));
  const StateVector psi0(ground_state(2));
  CHECK_THAT(ev.evolve(psi0, 2.0 * kPi / eta).amplitudes.norm(), WithinAbs(1.0, 1e-6));
  CHECK(std::abs(ev.evolve(psi0, kPi / eta).amplitudes.norm() - 1.0) > 1e-3);
}

TEST_CASE("evolution composes", "[dynamics][property]") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto spec = random_system(rng);
    const Evolver ev(build_hamiltonian(spec));
    const StateVector psi0(oracle::random_state(rng, static_cast<Eigen::Index>(spec.dimension())));
    const auto two_step = ev.evolve(ev.evolve(psi0, 0.4), 0.7);
    CHECK(rel_error(two_step.amplitudes, ev.evolve(psi0, 1.1).amplitudes) < 1e-8);
  }
}

TEST_CASE("routes at and near exceptional points", "[dynamics]") {
  const Matrix ep = build_hamiltonian(SystemSpec::uniform(1, {12.0, 12.0, 6.0, 0.0}, 0.0));
  CHECK_THROWS_AS(Evolver(ep, Propagator::Spectral), std::domain_error);
  const Evolver fallback(ep, Propagator::Auto);
  CHECK(fallback.route() == Propagator::Expm);
  const Vector psi0 = ground_state(1);
  CHECK(rel_error(fallback.evolve(StateVector(psi0), 1.0).amplitudes, rk4_propagate(ep, psi0, 1.0)) < 1e-6);
  CHECK(Evolver(build_hamiltonian(SystemSpec::uniform(1, {12.0, 12.0, 6.23, 0.0}, 0.0))).route() == Propagator::Spectral);
}

TEST_CASE("runaway gain raises an overflow error", "[dynamics]") {
  const Matrix h = build_hamiltonian(SystemSpec::uniform(1, {12.0, 12.0, 0.0, 0.0}, 0.0));
  try {
    evolve(h, StateVector(ground_state(1)), 100.0);
    FAIL("no overflow");
  } catch (const OverflowError& e) {
    CHECK(e.time() == 100.0);
  }
  CHECK_NOTHROW(evolve(h, StateVector(ground_state(1)), 50.0));
}

TEST_CASE("trajectories and CSV export", "[dynamics]") {
  const Evolver ev(build_hamiltonian(SystemSpec::uniform(2, {12.0, 12.0, 6.23, 0.0}, 0.001)));
  const auto traj = ev.trajectory(StateVector(ground_state(2)), {0.0, 0.5, 1.0});
  REQUIRE(traj.states.size() == 3);
  CHECK(traj.states[2].time == 1.0);
  CHECK_THROWS_AS(ev.trajectory(StateVector(ground_state(2)), {0.0, 0.0}), std::invalid_argument);
  std::ostringstream out;
  write_trajectory_csv(out, traj, ideal_two());
  const std::string csv = out.str();
  CHECK(csv.rfind("time,re_0,im_0,re_1,im_1,re_2,im_2,re_3,im_3,norm2,fidelity\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("propagator names round trip", "[dynamics]") {
  for (auto p : {Propagator::Auto, Propagator::Spectral, Propagator::Expm, Propagator::Oracle}) {
    CHECK(parse_propagator(propagator_name(p)) == p);
  }
  CHECK_THROWS_AS(parse_propagator("euler"), std::invalid_argument);
  CHECK_THROWS_AS(evolve(Matrix::Identity(2, 2), StateVector(ground_state(1)), -1.0), std::invalid_argument);
}
