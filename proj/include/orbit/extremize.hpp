#pragma once

// Extremal mutual information on the unitary orbit of a bipartite state.
//
// The maximum puts the spectrum on a generalized Bell basis, making both marginals maximally
// mixed: I_max = 2 log2(min(d_a, d_b)) - H(spectrum). The minimum is attained by a classical
// state whose populations are a placement of the spectrum on the d_a x d_b grid; it suffices
// to search the standard Young tableaux of the rectangle (up to transposition when square).

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "orbit/marginal2q.hpp"
#include "orbit/qcore.hpp"
#include "orbit/tableau.hpp"

namespace orbit {

/// Weyl basis |Phi_{a,b}> = d^{-1/2} sum_j w^{a j} |j>|j + b mod d>, d = min(d_a, d_b),
/// embedded in the d_a x d_b space. Ordered with the shift b outermost.
std::vector<Eigen::VectorXcd> generalized_bell_basis(BipartiteDims dims);

/// sum_i lambda_i |Phi_i><Phi_i|. Throws RankExceedsBellSpace if more than min(d_a, d_b)^2
/// eigenvalues exceed 1e-12.
DensityMatrix build_rho_max(const Spectrum& spectrum, BipartiteDims dims);

/// I(rho_max) = 2 log2(min(d_a, d_b)) - H(spectrum), in bits. This is the orbit maximum for
/// d_a == d_b; for unequal dimensions other orbit states can exceed it.
double i_max_formula(const Spectrum& spectrum, BipartiteDims dims);

/// Diagonal state sum lambda_{t(j,k)} |e_j><e_j| (x) |f_k><f_k|.
struct ClassicalState {
  Tableau tableau;
  Spectrum spectrum;
  Matrix basis_a;  // columns are |e_j>
  Matrix basis_b;  // columns are |f_k>
  double qmi_bits = 0.0;

  std::vector<double> populations_a() const;
  std::vector<double> populations_b() const;
  DensityMatrix density_matrix() const;
};

/// Holds the tableau set of one shape for repeated minimization.
class TableauSearch {
 public:
  /// Throws TooLarge above d_a * d_b = 16.
  explicit TableauSearch(BipartiteDims dims);

  const std::vector<Tableau>& tableaux() const { return tableaux_; }

  /// Smallest classical QMI; ties go to the lexicographically first tableau.
  ClassicalState minimize(const Spectrum& spectrum) const;

 private:
  BipartiteDims dims_;
  std::vector<Tableau> tableaux_;
  CandidateSet candidates_;
};

ClassicalState build_rho_min(const Spectrum& spectrum, BipartiteDims dims);

struct ExtremalResult {
  double i_min = 0.0;
  double i_max = 0.0;
  double delta_i_max = 0.0;
  ClassicalState minimizer;
  DensityMatrix maximizer;
};

ExtremalResult extremize(const Spectrum& spectrum, BipartiteDims dims);

// Closed forms for two qubits. Each throws WrongDimension unless the spectrum has 4 entries.

/// H(l1 + l2) + H(l1 + l3) - H(spectrum).
double i_min_two_qubit(const Spectrum& spectrum);

/// 2 - H(l1 + l2) - H(l1 + l3).
double delta_i_max_unitary(const Spectrum& spectrum);

/// 2 H(E/2) - H(l1 + l2) - H(l1 + l3), for H_A = H_B = |1><1|. Throws EnergyOutOfRange
/// unless E lies in the orbit's energy window (see energy_window).
double delta_i_max_energy(const Spectrum& spectrum, double energy);

// Two-qubit energy bookkeeping, H = H_A + H_B with H_A = H_B = |1><1| (levels 0, 1, 1, 2).

Matrix two_qubit_hamiltonian();

/// Re tr(rho H). Throws WrongDimension for non-2x2 states.
double two_qubit_energy(const DensityMatrix& rho);

/// Smallest and largest energy on the orbit: [l2 + l3 + 2 l4, 2 l1 + l2 + l3].
std::pair<double, double> energy_window(const Spectrum& spectrum);

struct OrbitSample {
  double qmi_bits = 0.0;
  std::optional<MarginalPoint> marginals;  // set for 2x2
};

/// QMI of U diag(spectrum) U^dagger for n_samples Haar unitaries.
std::vector<OrbitSample> sample_orbit_qmi(const Spectrum& spectrum, BipartiteDims dims, int n_samples,
                                          std::uint64_t seed);

/// Block-Haar unitary on the eigenspaces of H_A + H_B (blocks of size 1, 2, 1).
/// Throws WrongDimension unless dims is 2x2.
Matrix strong_energy_unitary(BipartiteDims dims, Rng& rng);
Matrix strong_energy_unitary(BipartiteDims dims, std::uint64_t seed);

enum class Direction { minimize, maximize };

struct WeakEnergyOptions {
  int budget = 10000;  // objective evaluations over all restarts
  int restarts = 32;
  std::uint64_t seed = 0;
};

struct WeakEnergyResult {
  double qmi_bits = 0.0;
  DensityMatrix state;
  double energy_error = 0.0;
  int evaluations = 0;
};

/// Derivative-free search over U(4) for the extremal QMI of U rho U^dagger subject to
/// tr(U rho U^dagger H) = E. Every trial state is moved back onto the energy surface along a
/// one-parameter orbit curve before it is scored, so accepted states satisfy the constraint
/// to ~1e-12. Throws EnergyMismatch if |tr(rho H) - E| > 1e-8, WrongDimension unless 2x2.
WeakEnergyResult optimize_qmi_weak_energy(const DensityMatrix& rho, double energy, Direction direction,
                                          const WeakEnergyOptions& options = {});

/// Moves rho along its orbit to energy `target`, or to a fixed diagonal-plus-rotation point of
/// the orbit when the local search fails. Throws InfeasibleEnergy outside energy_window.
DensityMatrix with_two_qubit_energy(const DensityMatrix& rho, double target, Rng& rng);

}  // namespace orbit
