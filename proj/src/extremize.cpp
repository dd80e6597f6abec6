#include "orbit/extremize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace orbit {
namespace {

void require_two_qubit_spectrum(const Spectrum& s) {
  if (s.size() != 4) {
    throw Error(ErrorKind::WrongDimension, "closed forms need a two-qubit spectrum, got " +
                                               std::to_string(s.size()) + " eigenvalues");
  }
}

void require_two_qubit(BipartiteDims dims) {
  if (dims.d_a != 2 || dims.d_b != 2) {
    throw Error(ErrorKind::WrongDimension,
                "expected 2x2, got " + std::to_string(dims.d_a) + "x" + std::to_string(dims.d_b));
  }
}

// Clamp for partial sums that drift a few ulp past 1.
double h2(double x) { return binary_entropy(std::clamp(x, 0.0, 1.0)); }

}  // namespace

std::vector<Eigen::VectorXcd> generalized_bell_basis(BipartiteDims dims) {
  const int d = dims.min_dim();
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Eigen::VectorXcd> basis;
  basis.reserve(static_cast<std::size_t>(d * d));
  for (int shift = 0; shift < d; ++shift) {
    for (int phase = 0; phase < d; ++phase) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dims.total());
      for (int j = 0; j < d; ++j) {
        const double angle = 2.0 * std::numbers::pi * phase * j / d;
        v(j * dims.d_b + (j + shift) % d) = norm * Complex(std::cos(angle), std::sin(angle));
      }
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

double i_max_formula(const Spectrum& spectrum, BipartiteDims dims) {
  return std::max(0.0, 2.0 * std::log2(static_cast<double>(dims.min_dim())) - shannon_entropy(spectrum.values()));
}

DensityMatrix build_rho_max(const Spectrum& spectrum, BipartiteDims dims) {
  if (spectrum.size() != static_cast<std::size_t>(dims.total())) {
    throw Error(ErrorKind::IndexMismatch, "spectrum length does not match dims");
  }
  const auto bell = generalized_bell_basis(dims);
  if (spectrum.rank() > bell.size()) {
    throw Error(ErrorKind::RankExceedsBellSpace,
                "rank " + std::to_string(spectrum.rank()) + " exceeds the " + std::to_string(bell.size()) +
                    " states of the Bell basis");
  }
  Matrix rho = Matrix::Zero(dims.total(), dims.total());
  for (std::size_t i = 0; i < bell.size(); ++i) rho += spectrum[i] * bell[i] * bell[i].adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho), dims);
}

std::vector<double> ClassicalState::populations_a() const {
  const auto& d = tableau.dims();
  std::vector<double> p(static_cast<std::size_t>(d.d_a), 0.0);
  for (int j = 0; j < d.d_a; ++j)
    for (int k = 0; k < d.d_b; ++k) p[j] += spectrum[tableau.at(j, k) - 1];
  return p;
}

std::vector<double> ClassicalState::populations_b() const {
  const auto& d = tableau.dims();
  std::vector<double> p(static_cast<std::size_t>(d.d_b), 0.0);
  for (int j = 0; j < d.d_a; ++j)
    for (int k = 0; k < d.d_b; ++k) p[k] += spectrum[tableau.at(j, k) - 1];
  return p;
}

DensityMatrix ClassicalState::density_matrix() const {
  const auto& d = tableau.dims();
  Matrix diag = Matrix::Zero(d.total(), d.total());
  for (int j = 0; j < d.d_a; ++j)
    for (int k = 0; k < d.d_b; ++k) diag(j * d.d_b + k, j * d.d_b + k) = spectrum[tableau.at(j, k) - 1];
  Matrix basis(d.total(), d.total());
  for (int j = 0; j < d.d_a; ++j)
    for (int jp = 0; jp < d.d_a; ++jp) basis.block(j * d.d_b, jp * d.d_b, d.d_b, d.d_b) = basis_a(j, jp) * basis_b;
  return DensityMatrix(basis * diag * basis.adjoint(), d);
}

TableauSearch::TableauSearch(BipartiteDims dims)
    : dims_(dims), tableaux_(enumerate_tableaux(dims)), candidates_(dims, std::span<const Tableau>(tableaux_)) {}

ClassicalState TableauSearch::minimize(const Spectrum& spectrum) const {
  const std::vector<double> values = candidates_.evaluate(spectrum);
  // min_element returns the first minimum; tableaux are in lexicographic order.
  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  return ClassicalState{tableaux_[best], spectrum, Matrix::Identity(dims_.d_a, dims_.d_a),
                        Matrix::Identity(dims_.d_b, dims_.d_b), values[best]};
}

ClassicalState build_rho_min(const Spectrum& spectrum, BipartiteDims dims) {
  if (spectrum.size() != static_cast<std::size_t>(dims.total())) {
    throw Error(ErrorKind::IndexMismatch, "spectrum length does not match dims");
  }
  return TableauSearch(dims).minimize(spectrum);
}

ExtremalResult extremize(const Spectrum& spectrum, BipartiteDims dims) {
  ClassicalState minimizer = build_rho_min(spectrum, dims);
  DensityMatrix maximizer = build_rho_max(spectrum, dims);
  const double i_max = i_max_formula(spectrum, dims);
  const double i_min = std::min(minimizer.qmi_bits, i_max);
  return ExtremalResult{i_min, i_max, i_max - i_min, std::move(minimizer), std::move(maximizer)};
}

double i_min_two_qubit(const Spectrum& spectrum) {
  require_two_qubit_spectrum(spectrum);
  const auto& l = spectrum;
  return std::max(0.0, h2(l[0] + l[1]) + h2(l[0] + l[2]) - shannon_entropy(l.values()));
}

double delta_i_max_unitary(const Spectrum& spectrum) {
  require_two_qubit_spectrum(spectrum);
  const auto& l = spectrum;
  return 2.0 - h2(l[0] + l[1]) - h2(l[0] + l[2]);
}

std::pair<double, double> energy_window(const Spectrum& spectrum) {
  require_two_qubit_spectrum(spectrum);
  const auto& l = spectrum;
  return {l[1] + l[2] + 2.0 * l[3], 2.0 * l[0] + l[1] + l[2]};
}

double delta_i_max_energy(const Spectrum& spectrum, double energy) {
  require_two_qubit_spectrum(spectrum);
  if (!(energy >= 0.0 && energy <= 2.0)) {
    throw Error(ErrorKind::EnergyOutOfRange, "energy " + std::to_string(energy) + " outside [0, 2]");
  }
  const auto [lo, hi] = energy_window(spectrum);
  if (energy < lo - kRegionTol || energy > hi + kRegionTol) {
    throw Error(ErrorKind::EnergyOutOfRange, "energy " + std::to_string(energy) + " outside the orbit window [" +
                                                 std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const auto& l = spectrum;
  return 2.0 * h2(energy / 2.0) - h2(l[0] + l[1]) - h2(l[0] + l[2]);
}

Matrix two_qubit_hamiltonian() {
  Matrix h = Matrix::Zero(4, 4);
  h(1, 1) = 1.0;
  h(2, 2) = 1.0;
  h(3, 3) = 2.0;
  return h;
}

double two_qubit_energy(const DensityMatrix& rho) {
  require_two_qubit(rho.dims());
  const Matrix& m = rho.matrix();
  return m(1, 1).real() + m(2, 2).real() + 2.0 * m(3, 3).real();
}

std::vector<OrbitSample> sample_orbit_qmi(const Spectrum& spectrum, BipartiteDims dims, int n_samples,
                                          std::uint64_t seed) {
  if (n_samples < 1) throw Error(ErrorKind::InvalidMode, "n_samples must be >= 1");
  if (spectrum.size() != static_cast<std::size_t>(dims.total())) {
    throw Error(ErrorKind::IndexMismatch, "spectrum length does not match dims");
  }
  Rng rng(seed);
  const DensityMatrix base = DensityMatrix::diagonal(spectrum.values(), dims);
  const bool two_qubit = dims.d_a == 2 && dims.d_b == 2;
  std::vector<OrbitSample> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const DensityMatrix sigma = evolve(base, haar_unitary(dims.total(), rng));
    OrbitSample s{mutual_information(sigma), std::nullopt};
    if (two_qubit) s.marginals = marginal_point(sigma);
    out.push_back(s);
  }
  return out;
}

Matrix strong_energy_unitary(BipartiteDims dims, Rng& rng) {
  require_two_qubit(dims);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = std::polar(1.0, angle(rng));
  u.block(1, 1, 2, 2) = haar_unitary(2, rng);
  u(3, 3) = std::polar(1.0, angle(rng));
  return u;
}

Matrix strong_energy_unitary(BipartiteDims dims, std::uint64_t seed) {
  Rng rng(seed);
  return strong_energy_unitary(dims, rng);
}

}  // namespace orbit
