#pragma once

// Placements of a joint spectrum on a d_a x d_b grid. Cell (j, k) of an arrangement holds
// the (1-based) rank of the eigenvalue assigned to |e_j>|f_k>, so row sums are the
// populations of A and column sums those of B.

#include <compare>
#include <concepts>
#include <span>
#include <vector>

#include "orbit/kernels.hpp"
#include "orbit/qcore.hpp"

namespace orbit {

inline constexpr int kMaxEnumerationDim = 16;

class Arrangement {
 public:
  /// `grid` is row-major with d_a rows of d_b entries, a permutation of 1..d_a*d_b.
  /// Throws IndexMismatch otherwise.
  Arrangement(BipartiteDims dims, std::vector<int> grid);

  const BipartiteDims& dims() const { return dims_; }
  std::span<const int> grid() const { return grid_; }
  int at(int row, int col) const { return grid_[static_cast<std::size_t>(row * dims_.d_b + col)]; }

  /// Indices increase along every row and down every column.
  bool is_standard() const;

  Arrangement transposed() const;

  std::vector<std::vector<int>> rows() const;

  bool operator==(const Arrangement& other) const { return grid_ == other.grid_ && dims_ == other.dims_; }
  std::strong_ordering operator<=>(const Arrangement& other) const { return grid_ <=> other.grid_; }

 private:
  BipartiteDims dims_;
  std::vector<int> grid_;
};

/// Standard Young tableau of the full d_a x d_b rectangle.
class Tableau : public Arrangement {
 public:
  /// Throws IndexMismatch unless the arrangement is standard.
  Tableau(BipartiteDims dims, std::vector<int> grid);
  explicit Tableau(Arrangement arrangement);
};

/// Standard tableaux of the rectangle in lexicographic (row-major) order. For d_a == d_b
/// only the lexicographically smaller member of each transpose pair is kept.
/// Throws TooLarge when d_a * d_b > 16.
std::vector<Tableau> enumerate_tableaux(BipartiteDims dims);

/// Packed candidates for repeated evaluation against different spectra.
///
/// Each candidate is stored canonically: members of every row and column are sorted and the
/// rows (columns) are ordered lexicographically. Two arrangements inducing the same row
/// and column partitions therefore produce bitwise identical values.
class CandidateSet {
 public:
  template <std::derived_from<Arrangement> T>
  CandidateSet(BipartiteDims dims, std::span<const T> candidates) : dims_(dims) {
    reserve(candidates.size());
    for (const auto& c : candidates) append(c);
    finish();
  }

  std::size_t size() const { return count_; }
  const BipartiteDims& dims() const { return dims_; }

  /// Mutual information in bits of every candidate's classical state, clipped at zero.
  /// Throws IndexMismatch if the spectrum length is not d_a * d_b.
  std::vector<double> evaluate(const Spectrum& spectrum) const;

 private:
  void reserve(std::size_t n);
  void append(const Arrangement& a);
  void finish();

  BipartiteDims dims_;
  std::size_t count_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::vector<int>> staged_rows_;
  std::vector<std::vector<int>> staged_cols_;
  std::vector<std::int32_t> row_members_;
  std::vector<std::int32_t> col_members_;
};

/// H(row sums) + H(column sums) - H(spectrum), in bits.
double classical_state_qmi(const Arrangement& arrangement, const Spectrum& spectrum);

}  // namespace orbit
