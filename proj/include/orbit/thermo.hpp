#pragma once

// Thermodynamic uses of the orbit extrema: Szilard work from correlated fuel, bounds on heat
// flowing against a temperature gradient, and a repeated-collision equilibration model.
//
// Every quantity here is in natural units: entropies in nats, temperatures in energy units
// with k configurable (default 1). Values taken from the extremize module (bits) are
// converted with bits_to_nats.

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "orbit/qcore.hpp"

namespace orbit {

/// Diagonal Hamiltonian in the computational basis.
struct Hamiltonian {
  std::vector<double> levels;

  /// |1><1| scaled by `gap`.
  static Hamiltonian qubit(double gap = 1.0) { return Hamiltonian{{0.0, gap}}; }

  int size() const { return static_cast<int>(levels.size()); }
  Matrix matrix() const;
  double expectation(const DensityMatrix& rho) const;
};

struct ThermalScenario {
  Hamiltonian h_a = Hamiltonian::qubit();
  Hamiltonian h_b = Hamiltonian::qubit();
  double t_a = 1.0;
  double t_b = 1.0;
  double k_boltzmann = 1.0;

  /// Throws NonPositiveTemperature for t <= 0 or k <= 0.
  void validate() const;
  double beta_a() const { return 1.0 / (k_boltzmann * t_a); }
  double beta_b() const { return 1.0 / (k_boltzmann * t_b); }
  /// h_a (x) 1 + 1 (x) h_b.
  Matrix total_hamiltonian() const;
};

double partition_function(const Hamiltonian& h, double t, double k_boltzmann = 1.0);

/// exp(-H / kT) / Z. Throws NonPositiveTemperature.
DensityMatrix gibbs_state(const Hamiltonian& h, double t, double k_boltzmann = 1.0);

/// tr(rho H) - kT S(rho). Throws DimensionMismatch.
double free_energy(const DensityMatrix& rho, const Hamiltonian& h, double t, double k_boltzmann = 1.0);

/// kT (ln(d_a d_b) - S(rho_A) - S(rho_B)).
double szilard_work(const DensityMatrix& rho, double t, double k_boltzmann = 1.0);

/// Largest extra work from an entropy-preserving global refinement: kT (I(rho) - I_min) in nats.
double refinery_gain(const DensityMatrix& rho, double t, double k_boltzmann = 1.0);

inline constexpr double kThermalTol = 1e-8;

struct HeatFlowReport {
  double q_a = 0.0;
  double q_b = 0.0;
  double delta_s_a = 0.0;
  double delta_s_b = 0.0;
  double delta_i = 0.0;
  /// beta_a Q_a + beta_b Q_b - (dS_a + dS_b); non-negative for thermal initial marginals.
  double local_slack = 0.0;
  /// Q_a (beta_a - beta_b) - dI; non-negative for energy-conserving evolutions.
  double bound_slack = 0.0;
  bool bound_satisfied = false;
  bool anomalous = false;
  double witness_threshold = std::numeric_limits<double>::infinity();
  bool witness_triggered = false;
};

/// Checks the heat-flow inequalities for one closed evolution `before` -> `after`.
/// Throws MarginalsNotThermal, EnergyNotConserved or SpectrumMismatch (tolerance 1e-8).
HeatFlowReport heat_flow_bound_check(const DensityMatrix& before, const DensityMatrix& after,
                                     const ThermalScenario& scenario);

/// ln(min(d_a, d_b)) / |beta_a - beta_b|; heat moved against the gradient beyond this
/// requires an entangled initial state.
double entanglement_witness_threshold(BipartiteDims dims, const ThermalScenario& scenario);

enum class QmiSource { initial_state, orbit_max };

std::string_view qmi_source_name(QmiSource source);

struct AnomalousHeatBound {
  double max_heat = 0.0;  // energy units
  double witness_threshold = 0.0;
  double qmi_nats = 0.0;
  double i_min_nats = 0.0;
  QmiSource source = QmiSource::orbit_max;
};

/// Two-qubit bound on anomalous heat: (I - I_min) / |beta_a - beta_b|. Without an initial
/// state the orbit maximum stands in for I. Throws EqualTemperatures, InfeasibleMarginals
/// (thermal marginals outside the marginal region of the spectrum), WrongDimension.
AnomalousHeatBound max_anomalous_heat(const Spectrum& spectrum, const ThermalScenario& scenario);
AnomalousHeatBound max_anomalous_heat(const DensityMatrix& initial, const ThermalScenario& scenario);

enum class CollisionUnitary { partial_swap, random_strong };
enum class Decorrelation { full_product, dephase_to_minimal };

struct CollisionConfig {
  int steps = 100;
  CollisionUnitary unitary = CollisionUnitary::partial_swap;
  double theta = 0.3;
  Decorrelation mode = Decorrelation::full_product;
  std::uint64_t seed = 0;
};

/// One row per collision; row 0 is the initial product of Gibbs states. Temperatures are
/// effective: (E_1 - E_0) / (k ln(p_0 / p_1)) from the diagonal of each marginal.
struct CollisionStep {
  int step = 0;
  double s_a = 0.0;
  double s_b = 0.0;
  double t_a = 0.0;
  double t_b = 0.0;
  double qmi = 0.0;  // after the unitary, before decorrelation
  double q_a = 0.0;
};

struct CollisionTrace {
  std::vector<CollisionStep> steps;
};

/// exp(i theta SWAP) = cos(theta) 1 + i sin(theta) SWAP.
Matrix partial_swap(double theta);

double effective_temperature(const DensityMatrix& reduced, const Hamiltonian& h, double k_boltzmann = 1.0);

/// Two-qubit collision model. Each step applies U, then either replaces the state by the
/// product of its marginals or dephases it in the energy basis and rearranges the
/// populations into the minimally correlated classical state.
/// Throws InvalidMode for non-qubit Hamiltonians or steps < 0.
CollisionTrace collision_simulate(const ThermalScenario& scenario, const CollisionConfig& config);

}  // namespace orbit
