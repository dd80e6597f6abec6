#pragma once

// Dense finite-dimensional bipartite states and the entropic quantities built on them.
//
// Composite basis convention: |j>|k> has index j * d_b + k, j indexing A and k indexing B.

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "orbit/error.hpp"

namespace orbit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

inline constexpr double kStateTol = 1e-10;
inline constexpr double kSpectrumSumTol = 1e-12;
inline constexpr int kMaxTotalDim = 64;

enum class EntropyUnit { bits, nats };

constexpr double bits_to_nats(double bits) { return bits * std::numbers::ln2; }
constexpr double nats_to_bits(double nats) { return nats / std::numbers::ln2; }

struct BipartiteDims {
  int d_a = 2;
  int d_b = 2;

  BipartiteDims() = default;
  /// Throws InvalidDims unless both factors are >= 2 and d_a * d_b <= 64.
  BipartiteDims(int a, int b);

  /// Parses "AxB", e.g. "2x3".
  static BipartiteDims parse(std::string_view text);

  int total() const { return d_a * d_b; }
  int min_dim() const { return d_a < d_b ? d_a : d_b; }
  bool operator==(const BipartiteDims&) const = default;
};

/// Probability vector sorted non-increasing; the invariant of a unitary orbit.
class Spectrum {
 public:
  /// Sorts the values. Throws NotADistribution if an entry leaves [0, 1] or the
  /// total differs from 1 by more than 1e-12.
  explicit Spectrum(std::vector<double> values);

  /// Clips entries in [-1e-10, 0) to zero and rescales to unit sum before validating.
  static Spectrum normalized(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Number of entries above `cutoff`.
  std::size_t rank(double cutoff = 1e-12) const;

 private:
  std::vector<double> values_;
};

enum class Subsystem { A, B };

/// Hermitian, positive semidefinite, unit trace. Bipartite metadata is optional so that
/// reduced states share the type.
class DensityMatrix {
 public:
  /// Throws NotAState if Hermiticity, trace or positivity fail beyond 1e-10.
  explicit DensityMatrix(Matrix entries, std::optional<BipartiteDims> dims = std::nullopt);

  static DensityMatrix diagonal(std::span<const double> populations,
                                std::optional<BipartiteDims> dims = std::nullopt);

  const Matrix& matrix() const { return entries_; }
  int size() const { return static_cast<int>(entries_.rows()); }

  bool is_bipartite() const { return dims_.has_value(); }
  /// Throws DimensionMismatch for a state without bipartite metadata.
  const BipartiteDims& dims() const;

  /// Eigenvalues found during validation, ascending, uncleaned.
  std::span<const double> raw_eigenvalues() const { return eigenvalues_; }

 private:
  Matrix entries_;
  std::optional<BipartiteDims> dims_;
  std::vector<double> eigenvalues_;
};

Spectrum spectrum_of(const DensityMatrix& rho);

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Returns U rho U^dagger. The result is re-validated.
DensityMatrix evolve(const DensityMatrix& rho, const Matrix& unitary);

double shannon_entropy(std::span<const double> p, EntropyUnit unit = EntropyUnit::bits);

/// H(x) = shannon_entropy({x, 1 - x}).
double binary_entropy(double x, EntropyUnit unit = EntropyUnit::bits);

double von_neumann_entropy(const DensityMatrix& rho, EntropyUnit unit = EntropyUnit::bits);

/// S(rho_A) + S(rho_B) - S(rho), clipped at zero.
double mutual_information(const DensityMatrix& rho, EntropyUnit unit = EntropyUnit::bits);

/// Haar-distributed n x n unitary: QR of a complex Ginibre matrix with the phases of
/// diag(R) divided out.
Matrix haar_unitary(int n, Rng& rng);
Matrix haar_unitary(int n, std::uint64_t seed);

/// True iff x majorizes y (y is majorized by x). The shorter vector is zero padded.
/// Throws NotADistribution for invalid inputs.
bool majorizes(std::span<const double> x, std::span<const double> y);

/// Largest elementwise modulus of U U^dagger - I.
double unitarity_defect(const Matrix& u);

}  // namespace orbit
