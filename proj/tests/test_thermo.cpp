#include <doctest.h>

#include <cmath>

#include "orbit/extremize.hpp"
#include "orbit/thermo.hpp"
#include "support.hpp"

using namespace orbit;

namespace {

const double kLn2 = std::log(2.0);

DensityMatrix bell_state() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return DensityMatrix(m, BipartiteDims(2, 2));
}

ThermalScenario scenario(double ta, double tb) {
  ThermalScenario s;
  s.t_a = ta;
  s.t_b = tb;
  return s;
}

// Thermal marginals with classical correlation c and coherences on the |00>,|11> and
// |01>,|10> pairs; all of it is invisible to the reduced states.
DensityMatrix correlated_thermal(const ThermalScenario& sc, Rng& rng) {
  const double pa = gibbs_state(sc.h_a, sc.t_a).matrix()(0, 0).real();
  const double pb = gibbs_state(sc.h_b, sc.t_b).matrix()(0, 0).real();
  const double p00 = pa * pb, p01 = pa * (1 - pb), p10 = (1 - pa) * pb, p11 = (1 - pa) * (1 - pb);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double c = (2.0 * u(rng) - 1.0) * std::min(std::min(p01, p10), std::min(p00, p11)) * 0.95;
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = p00 + c;
  m(1, 1) = p01 - c;
  m(2, 2) = p10 - c;
  m(3, 3) = p11 + c;
  const Complex g = std::polar(0.95 * u(rng) * std::sqrt(m(0, 0).real() * m(3, 3).real()), 6.283 * u(rng));
  const Complex d = std::polar(0.95 * u(rng) * std::sqrt(m(1, 1).real() * m(2, 2).real()), 6.283 * u(rng));
  m(0, 3) = g;
  m(3, 0) = std::conj(g);
  m(1, 2) = d;
  m(2, 1) = std::conj(d);
  return DensityMatrix(m, BipartiteDims(2, 2));
}

}  // namespace

TEST_CASE("gibbs state and free energy") {
  const auto g = gibbs_state(Hamiltonian::qubit(), 1.0);
  CHECK(std::abs(g.matrix()(0, 0).real() - 0.7310585786300049) < 1e-15);
  CHECK(std::abs(g.matrix()(1, 1).real() - 0.2689414213699951) < 1e-15);
  CHECK(std::abs(partition_function(Hamiltonian::qubit(), 1.0) - (1.0 + std::exp(-1.0))) < 1e-15);
  CHECK(std::abs(free_energy(g, Hamiltonian::qubit(), 1.0) - (-0.31326168751822286)) < 1e-14);
  CHECK(std::abs(free_energy(g, Hamiltonian::qubit(), 1.0) + std::log(partition_function(Hamiltonian::qubit(), 1.0))) < 1e-14);

  // Free energy is minimized by the Gibbs state.
  Rng rng(83);
  const Hamiltonian h{{0.0, 0.7, 1.9}};
  const double f_gibbs = free_energy(gibbs_state(h, 0.8), h, 0.8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = orbit::testing::random_distribution(3, rng);
    const Matrix u = haar_unitary(3, rng);
    const DensityMatrix rho(u * DensityMatrix::diagonal(p).matrix() * u.adjoint());
    REQUIRE(free_energy(rho, h, 0.8) >= f_gibbs - 1e-12);
  }

  CHECK_THROWS_AS(gibbs_state(Hamiltonian::qubit(), 0.0), Error);
  try {
    gibbs_state(Hamiltonian::qubit(), -1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPositiveTemperature);
  }
  CHECK_THROWS_AS(free_energy(bell_state(), Hamiltonian::qubit(), 1.0), Error);
}

TEST_CASE("szilard work") {
  CHECK(std::abs(szilard_work(bell_state(), 1.0)) < 1e-12);
  CHECK(std::abs(szilard_work(DensityMatrix(Matrix::Identity(4, 4) / 4.0, BipartiteDims(2, 2)), 1.0)) < 1e-12);
  const double pure[] = {1.0, 0.0, 0.0, 0.0};
  CHECK(std::abs(szilard_work(DensityMatrix::diagonal(pure, BipartiteDims(2, 2)), 2.0) - 2.0 * 2.0 * kLn2) < 1e-12);
}

TEST_CASE("refinery gain") {
  CHECK(std::abs(refinery_gain(bell_state(), 1.0) - 2.0 * kLn2) < 1e-10);
  CHECK(std::abs(refinery_gain(bell_state(), 1.0) - 1.3863) < 1e-4);
  const auto prod = tensor_product(gibbs_state(Hamiltonian::qubit(), 1.0), gibbs_state(Hamiltonian::qubit(), 2.0));
  CHECK(std::abs(refinery_gain(prod, 1.0)) < 1e-10);
  const auto rho_max = build_rho_max(Spectrum({0.6, 0.3, 0.1, 0.0}), BipartiteDims(2, 2));
  CHECK(std::abs(refinery_gain(rho_max, 1.0) - 0.4503470856735489) < 1e-10);
  CHECK(std::abs(refinery_gain(rho_max, 2.5, 2.0) - 5.0 * 0.4503470856735489) < 1e-9);

  Rng rng(89);
  for (int trial = 0; trial < 100; ++trial) REQUIRE(refinery_gain(orbit::testing::random_state(BipartiteDims(2, 3), rng), 1.0) >= 0.0);
}

TEST_CASE("heat flow laws for product Gibbs states") {
  Rng rng(97);
  for (auto [ta, tb] : {std::pair{0.5, 2.0}, {1.0, 1.0}, {3.0, 0.7}}) {
    const auto sc = scenario(ta, tb);
    const auto before = tensor_product(gibbs_state(sc.h_a, ta), gibbs_state(sc.h_b, tb));
    for (int trial = 0; trial < 300; ++trial) {
      const auto after = evolve(before, strong_energy_unitary(BipartiteDims(2, 2), rng));
      const auto r = heat_flow_bound_check(before, after, sc);
      REQUIRE(r.local_slack >= -1e-8);
      REQUIRE(r.bound_slack >= -1e-8);
      REQUIRE(r.bound_satisfied);
      REQUIRE(std::abs(r.q_a + r.q_b) < 1e-10);
      if (ta <= tb) REQUIRE(r.q_a >= -1e-8);
      if (ta > tb) REQUIRE(r.q_a <= 1e-8);
    }
  }
}

TEST_CASE("heat flow laws for correlated states with thermal marginals") {
  Rng rng(101);
  const auto sc = scenario(0.5, 2.0);
  int anomalous = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto before = correlated_thermal(sc, rng);
    const auto after = evolve(before, strong_energy_unitary(BipartiteDims(2, 2), rng));
    const auto r = heat_flow_bound_check(before, after, sc);
    REQUIRE(r.local_slack >= -1e-8);
    REQUIRE(r.bound_slack >= -1e-8);
    anomalous += r.anomalous ? 1 : 0;
  }
  // Correlations let heat run from cold to hot in some trials.
  CHECK(anomalous > 0);
}

TEST_CASE("heat flow check errors") {
  const auto sc = scenario(1.0, 2.0);
  const auto before = tensor_product(gibbs_state(sc.h_a, 1.0), gibbs_state(sc.h_b, 2.0));
  try {
    heat_flow_bound_check(bell_state(), bell_state(), sc);
    FAIL("expected MarginalsNotThermal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MarginalsNotThermal);
  }
  Rng rng(103);
  try {
    heat_flow_bound_check(before, evolve(before, haar_unitary(4, rng)), sc);
    FAIL("expected EnergyNotConserved");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EnergyNotConserved);
  }
  // Dephasing the populations toward each other in the degenerate block keeps the energy
  // but changes the spectrum.
  Matrix m = before.matrix();
  const double avg = 0.5 * (m(1, 1).real() + m(2, 2).real());
  m(1, 1) = avg;
  m(2, 2) = avg;
  try {
    heat_flow_bound_check(before, DensityMatrix(m, BipartiteDims(2, 2)), sc);
    FAIL("expected SpectrumMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SpectrumMismatch);
  }
  CHECK_THROWS_AS(heat_flow_bound_check(before, before, scenario(0.0, 1.0)), Error);
}

TEST_CASE("witness threshold") {
  CHECK(std::abs(entanglement_witness_threshold(BipartiteDims(2, 2), scenario(1.0, 2.0)) - 1.3862943611198906) < 1e-12);
  CHECK(std::abs(entanglement_witness_threshold(BipartiteDims(2, 2), scenario(0.5, 2.0)) - 0.46209812037329684) < 1e-12);
  CHECK(std::abs(entanglement_witness_threshold(BipartiteDims(2, 2), scenario(1.0, 3.0)) - 1.0397207708399179) < 1e-12);
  CHECK(std::abs(entanglement_witness_threshold(BipartiteDims(3, 3), scenario(1.0, 2.0)) - 2.0 * std::log(3.0)) < 1e-12);
  try {
    entanglement_witness_threshold(BipartiteDims(2, 2), scenario(1.0, 1.0));
    FAIL("expected EqualTemperatures");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EqualTemperatures);
  }
}

TEST_CASE("max anomalous heat") {
  const auto sc = scenario(1.0, 2.0);
  const Spectrum mixed({0.5, 0.3, 0.15, 0.05});
  // Thermal smaller eigenvalues at T=1 and T=2 are 0.269 and 0.378, inside the region.
  const auto b = max_anomalous_heat(mixed, sc);
  CHECK(b.source == QmiSource::orbit_max);
  CHECK(std::abs(b.witness_threshold - 1.3862943611198906) < 1e-12);
  const double expected = bits_to_nats(i_max_formula(mixed, BipartiteDims(2, 2)) - i_min_two_qubit(mixed)) / 0.5;
  CHECK(std::abs(b.max_heat - expected) < 1e-12);
  CHECK(qmi_source_name(b.source) == "orbit_max");

  const auto prod = tensor_product(gibbs_state(sc.h_a, 1.0), gibbs_state(sc.h_b, 2.0));
  const auto from_state = max_anomalous_heat(prod, sc);
  CHECK(from_state.source == QmiSource::initial_state);
  CHECK(from_state.max_heat < 1e-10);

  try {
    max_anomalous_heat(Spectrum({1.0, 0.0, 0.0, 0.0}), sc);
    FAIL("expected InfeasibleMarginals");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InfeasibleMarginals);
  }
  CHECK_THROWS_AS(max_anomalous_heat(mixed, scenario(2.0, 2.0)), Error);
}

TEST_CASE("partial swap") {
  const Matrix u = partial_swap(0.3);
  CHECK(unitarity_defect(u) < 1e-14);
  const Matrix h = ThermalScenario{}.total_hamiltonian();
  CHECK(orbit::testing::max_abs(u * h - h * u) < 1e-15);
  CHECK(orbit::testing::max_abs(partial_swap(0.0) - Matrix::Identity(4, 4)) < 1e-15);
}

TEST_CASE("effective temperature inverts the Gibbs state") {
  for (double t : {0.3, 1.0, 2.0, 7.5}) {
    CHECK(std::abs(effective_temperature(gibbs_state(Hamiltonian::qubit(), t), Hamiltonian::qubit()) - t) < 1e-10);
  }
  CHECK(std::isinf(effective_temperature(DensityMatrix(Matrix::Identity(2, 2) / 2.0), Hamiltonian::qubit())));
}

TEST_CASE("collision model equilibrates") {
  const auto sc = scenario(0.5, 2.0);
  const auto trace = collision_simulate(sc, {500, CollisionUnitary::partial_swap, 0.3, Decorrelation::full_product, 0});
  REQUIRE(trace.steps.size() == 501);
  CHECK(std::abs(trace.steps[0].t_a - 0.5) < 1e-10);
  CHECK(std::abs(trace.steps[0].t_b - 2.0) < 1e-10);
  CHECK(std::abs(trace.steps.back().t_a - trace.steps.back().t_b) < 0.01);
  for (std::size_t i = 1; i < trace.steps.size(); ++i) {
    const double before = trace.steps[i - 1].s_a + trace.steps[i - 1].s_b;
    const double after = trace.steps[i].s_a + trace.steps[i].s_b;
    REQUIRE(after >= before - 1e-10);
    REQUIRE(trace.steps[i].q_a >= -1e-12);  // the colder side only warms
  }
  CHECK(std::abs(collision_simulate(sc, {200, CollisionUnitary::partial_swap, 0.3, Decorrelation::full_product, 0})
                     .steps.back()
                     .t_a -
                 collision_simulate(sc, {200, CollisionUnitary::partial_swap, 0.3, Decorrelation::full_product, 0})
                     .steps.back()
                     .t_b) < 0.01);
}

TEST_CASE("collision model with dephasing and random strong unitaries") {
  const auto sc = scenario(0.5, 2.0);
  const auto dephase = collision_simulate(sc, {1000, CollisionUnitary::partial_swap, 0.3, Decorrelation::dephase_to_minimal, 0});
  CHECK(std::abs(dephase.steps.back().t_a - dephase.steps.back().t_b) < 0.05);

  const auto random = collision_simulate(sc, {300, CollisionUnitary::random_strong, 0.3, Decorrelation::full_product, 7});
  CHECK(std::abs(random.steps.back().t_a - random.steps.back().t_b) < 0.05);
  const auto again = collision_simulate(sc, {300, CollisionUnitary::random_strong, 0.3, Decorrelation::full_product, 7});
  CHECK(again.steps.back().t_a == random.steps.back().t_a);

  CHECK_THROWS_AS(collision_simulate(sc, {-1, CollisionUnitary::partial_swap, 0.3, Decorrelation::full_product, 0}), Error);
  ThermalScenario qutrit = sc;
  qutrit.h_a = Hamiltonian{{0.0, 1.0, 2.0}};
  CHECK_THROWS_AS(collision_simulate(qutrit, {}), Error);
}
