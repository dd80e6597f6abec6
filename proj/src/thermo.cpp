#include "orbit/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orbit/extremize.hpp"
#include "orbit/marginal2q.hpp"

namespace orbit {
namespace {

void require_temperature(double t, double k) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::NonPositiveTemperature, "temperature must be positive, got " + std::to_string(t));
  }
  if (!(k > 0.0)) throw Error(ErrorKind::NonPositiveTemperature, "Boltzmann constant must be positive");
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Repeated products double any trace error each step, so reset it.
DensityMatrix unit_trace(const DensityMatrix& rho) {
  return DensityMatrix(rho.matrix() / rho.matrix().trace().real());
}

double i_min_bits(const Spectrum& spectrum, BipartiteDims dims) {
  if (dims.d_a == 2 && dims.d_b == 2) return i_min_two_qubit(spectrum);
  return build_rho_min(spectrum, dims).qmi_bits;
}

}  // namespace

Matrix Hamiltonian::matrix() const {
  Matrix m = Matrix::Zero(size(), size());
  for (int i = 0; i < size(); ++i) m(i, i) = levels[static_cast<std::size_t>(i)];
  return m;
}

double Hamiltonian::expectation(const DensityMatrix& rho) const {
  if (rho.size() != size()) throw Error(ErrorKind::DimensionMismatch, "Hamiltonian and state sizes differ");
  double e = 0.0;
  for (int i = 0; i < size(); ++i) e += levels[static_cast<std::size_t>(i)] * rho.matrix()(i, i).real();
  return e;
}

void ThermalScenario::validate() const {
  require_temperature(t_a, k_boltzmann);
  require_temperature(t_b, k_boltzmann);
  if (h_a.size() < 2 || h_b.size() < 2) throw Error(ErrorKind::InvalidDims, "local Hamiltonians need >= 2 levels");
}

Matrix ThermalScenario::total_hamiltonian() const {
  const int da = h_a.size();
  const int db = h_b.size();
  Matrix m = Matrix::Zero(da * db, da * db);
  for (int j = 0; j < da; ++j)
    for (int k = 0; k < db; ++k) m(j * db + k, j * db + k) = h_a.levels[j] + h_b.levels[k];
  return m;
}

double partition_function(const Hamiltonian& h, double t, double k_boltzmann) {
  require_temperature(t, k_boltzmann);
  double z = 0.0;
  for (double e : h.levels) z += std::exp(-e / (k_boltzmann * t));
  return z;
}

DensityMatrix gibbs_state(const Hamiltonian& h, double t, double k_boltzmann) {
  require_temperature(t, k_boltzmann);
  if (h.levels.empty()) throw Error(ErrorKind::DimensionMismatch, "empty Hamiltonian");
  const double ground = *std::min_element(h.levels.begin(), h.levels.end());
  std::vector<double> p;
  p.reserve(h.levels.size());
  double z = 0.0;
  for (double e : h.levels) {
    p.push_back(std::exp(-(e - ground) / (k_boltzmann * t)));
    z += p.back();
  }
  for (double& v : p) v /= z;
  return DensityMatrix::diagonal(p);
}

double free_energy(const DensityMatrix& rho, const Hamiltonian& h, double t, double k_boltzmann) {
  require_temperature(t, k_boltzmann);
  return h.expectation(rho) - k_boltzmann * t * von_neumann_entropy(rho, EntropyUnit::nats);
}

double szilard_work(const DensityMatrix& rho, double t, double k_boltzmann) {
  require_temperature(t, k_boltzmann);
  const auto& dims = rho.dims();
  const double s_a = von_neumann_entropy(partial_trace(rho, Subsystem::A), EntropyUnit::nats);
  const double s_b = von_neumann_entropy(partial_trace(rho, Subsystem::B), EntropyUnit::nats);
  return k_boltzmann * t * (std::log(static_cast<double>(dims.total())) - s_a - s_b);
}

double refinery_gain(const DensityMatrix& rho, double t, double k_boltzmann) {
  require_temperature(t, k_boltzmann);
  const double i_now = mutual_information(rho);
  const double i_min = i_min_bits(spectrum_of(rho), rho.dims());
  return k_boltzmann * t * bits_to_nats(std::max(0.0, i_now - i_min));
}

HeatFlowReport heat_flow_bound_check(const DensityMatrix& before, const DensityMatrix& after,
                                     const ThermalScenario& scenario) {
  scenario.validate();
  const auto& dims = before.dims();
  if (!(after.dims() == dims) || dims.d_a != scenario.h_a.size() || dims.d_b != scenario.h_b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "states and Hamiltonians disagree on dimensions");
  }
  const DensityMatrix a0 = partial_trace(before, Subsystem::A);
  const DensityMatrix b0 = partial_trace(before, Subsystem::B);
  const double dev_a = max_abs_diff(a0.matrix(), gibbs_state(scenario.h_a, scenario.t_a, scenario.k_boltzmann).matrix());
  const double dev_b = max_abs_diff(b0.matrix(), gibbs_state(scenario.h_b, scenario.t_b, scenario.k_boltzmann).matrix());
  if (dev_a > kThermalTol || dev_b > kThermalTol) {
    throw Error(ErrorKind::MarginalsNotThermal, "initial marginals deviate from Gibbs states by " +
                                                    std::to_string(std::max(dev_a, dev_b)));
  }
  const Matrix h = scenario.total_hamiltonian();
  const double e0 = (before.matrix() * h).trace().real();
  const double e1 = (after.matrix() * h).trace().real();
  if (std::abs(e1 - e0) > kThermalTol) {
    throw Error(ErrorKind::EnergyNotConserved, "total energy changed by " + std::to_string(e1 - e0));
  }
  const Spectrum s0 = spectrum_of(before);
  const Spectrum s1 = spectrum_of(after);
  for (std::size_t i = 0; i < s0.size(); ++i) {
    if (std::abs(s0[i] - s1[i]) > kThermalTol) {
      throw Error(ErrorKind::SpectrumMismatch, "joint spectrum changed; evolution is not unitary");
    }
  }

  const DensityMatrix a1 = partial_trace(after, Subsystem::A);
  const DensityMatrix b1 = partial_trace(after, Subsystem::B);
  HeatFlowReport r;
  r.q_a = scenario.h_a.expectation(a1) - scenario.h_a.expectation(a0);
  r.q_b = scenario.h_b.expectation(b1) - scenario.h_b.expectation(b0);
  r.delta_s_a = von_neumann_entropy(a1, EntropyUnit::nats) - von_neumann_entropy(a0, EntropyUnit::nats);
  r.delta_s_b = von_neumann_entropy(b1, EntropyUnit::nats) - von_neumann_entropy(b0, EntropyUnit::nats);
  r.delta_i = mutual_information(after, EntropyUnit::nats) - mutual_information(before, EntropyUnit::nats);

  const double ba = scenario.beta_a();
  const double bb = scenario.beta_b();
  r.local_slack = ba * r.q_a + bb * r.q_b - (r.delta_s_a + r.delta_s_b);
  r.bound_slack = r.q_a * (ba - bb) - r.delta_i;
  r.bound_satisfied = r.bound_slack >= -kThermalTol;
  r.anomalous = scenario.t_a <= scenario.t_b ? r.q_a < -1e-12 : r.q_a > 1e-12;
  if (scenario.t_a != scenario.t_b) {
    r.witness_threshold = entanglement_witness_threshold(dims, scenario);
    r.witness_triggered = r.anomalous && std::abs(r.q_a) > r.witness_threshold;
  }
  return r;
}

double entanglement_witness_threshold(BipartiteDims dims, const ThermalScenario& scenario) {
  scenario.validate();
  const double gap = std::abs(scenario.beta_a() - scenario.beta_b());
  if (gap == 0.0) throw Error(ErrorKind::EqualTemperatures, "witness threshold diverges for equal temperatures");
  return std::log(static_cast<double>(dims.min_dim())) / gap;
}

std::string_view qmi_source_name(QmiSource source) {
  return source == QmiSource::initial_state ? "initial_state" : "orbit_max";
}

namespace {

AnomalousHeatBound anomalous_bound(const Spectrum& spectrum, const ThermalScenario& scenario,
                                   std::optional<double> initial_qmi_bits) {
  scenario.validate();
  if (spectrum.size() != 4 || scenario.h_a.size() != 2 || scenario.h_b.size() != 2) {
    throw Error(ErrorKind::WrongDimension, "anomalous heat bound is two-qubit only");
  }
  if (scenario.t_a == scenario.t_b) {
    throw Error(ErrorKind::EqualTemperatures, "bound diverges for equal temperatures");
  }
  const auto smaller = [&](const Hamiltonian& h, double t) {
    const Spectrum s = spectrum_of(gibbs_state(h, t, scenario.k_boltzmann));
    return s[1];
  };
  const MarginalPoint thermal{smaller(scenario.h_a, scenario.t_a), smaller(scenario.h_b, scenario.t_b)};
  if (!contains(MarginalRegion(spectrum), thermal)) {
    throw Error(ErrorKind::InfeasibleMarginals, "no state with this spectrum has the requested thermal marginals");
  }
  const BipartiteDims dims(2, 2);
  AnomalousHeatBound out;
  out.i_min_nats = bits_to_nats(i_min_two_qubit(spectrum));
  if (initial_qmi_bits) {
    out.qmi_nats = bits_to_nats(*initial_qmi_bits);
    out.source = QmiSource::initial_state;
  } else {
    out.qmi_nats = bits_to_nats(i_max_formula(spectrum, dims));
    out.source = QmiSource::orbit_max;
  }
  const double gap = std::abs(scenario.beta_a() - scenario.beta_b());
  out.max_heat = std::max(0.0, out.qmi_nats - out.i_min_nats) / gap;
  out.witness_threshold = entanglement_witness_threshold(dims, scenario);
  return out;
}

}  // namespace

AnomalousHeatBound max_anomalous_heat(const Spectrum& spectrum, const ThermalScenario& scenario) {
  return anomalous_bound(spectrum, scenario, std::nullopt);
}

AnomalousHeatBound max_anomalous_heat(const DensityMatrix& initial, const ThermalScenario& scenario) {
  return anomalous_bound(spectrum_of(initial), scenario, mutual_information(initial));
}

Matrix partial_swap(double theta) {
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = 1.0;
  swap(1, 2) = 1.0;
  swap(2, 1) = 1.0;
  swap(3, 3) = 1.0;
  return std::cos(theta) * Matrix::Identity(4, 4) + Complex(0.0, std::sin(theta)) * swap;
}

double effective_temperature(const DensityMatrix& reduced, const Hamiltonian& h, double k_boltzmann) {
  if (reduced.size() != h.size() || h.size() < 2) {
    throw Error(ErrorKind::DimensionMismatch, "effective temperature needs matching two-level data");
  }
  std::vector<int> order(static_cast<std::size_t>(h.size()));
  for (int i = 0; i < h.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return h.levels[x] < h.levels[y]; });
  const double p0 = reduced.matrix()(order[0], order[0]).real();
  const double p1 = reduced.matrix()(order[1], order[1]).real();
  const double gap = h.levels[order[1]] - h.levels[order[0]];
  if (p1 <= 0.0) return 0.0;
  const double ratio = std::log(p0 / p1);
  if (ratio == 0.0) return std::numeric_limits<double>::infinity();
  return gap / (k_boltzmann * ratio);
}

CollisionTrace collision_simulate(const ThermalScenario& scenario, const CollisionConfig& config) {
  scenario.validate();
  if (scenario.h_a.size() != 2 || scenario.h_b.size() != 2) {
    throw Error(ErrorKind::InvalidMode, "collision model is defined for two qubits");
  }
  if (config.steps < 0) throw Error(ErrorKind::InvalidMode, "steps must be >= 0");

  const double k = scenario.k_boltzmann;
  const BipartiteDims dims(2, 2);
  Rng rng(config.seed);
  const TableauSearch tableaux(dims);
  const Matrix fixed_u = partial_swap(config.theta);

  DensityMatrix rho = tensor_product(gibbs_state(scenario.h_a, scenario.t_a, k), gibbs_state(scenario.h_b, scenario.t_b, k));

  CollisionTrace trace;
  trace.steps.reserve(static_cast<std::size_t>(config.steps) + 1);
  const auto record = [&](int step, const DensityMatrix& state, double qmi, double q_a) {
    const DensityMatrix a = partial_trace(state, Subsystem::A);
    const DensityMatrix b = partial_trace(state, Subsystem::B);
    trace.steps.push_back(CollisionStep{step, von_neumann_entropy(a, EntropyUnit::nats),
                                        von_neumann_entropy(b, EntropyUnit::nats),
                                        effective_temperature(a, scenario.h_a, k),
                                        effective_temperature(b, scenario.h_b, k), qmi, q_a});
  };
  record(0, rho, 0.0, 0.0);

  for (int step = 1; step <= config.steps; ++step) {
    const Matrix u = config.unitary == CollisionUnitary::partial_swap ? fixed_u : strong_energy_unitary(dims, rng);
    const DensityMatrix evolved = evolve(rho, u);
    const double qmi = mutual_information(evolved, EntropyUnit::nats);
    const DensityMatrix a0 = partial_trace(rho, Subsystem::A);
    const DensityMatrix a1 = partial_trace(evolved, Subsystem::A);
    const double q_a = scenario.h_a.expectation(a1) - scenario.h_a.expectation(a0);

    if (config.mode == Decorrelation::full_product) {
      rho = tensor_product(unit_trace(a1), unit_trace(partial_trace(evolved, Subsystem::B)));
    } else {
      std::vector<double> populations(4);
      for (int i = 0; i < 4; ++i) populations[i] = evolved.matrix()(i, i).real();
      rho = tableaux.minimize(Spectrum::normalized(std::move(populations))).density_matrix();
    }
    record(step, rho, qmi, q_a);
  }
  return trace;
}

}  // namespace orbit
