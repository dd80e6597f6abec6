#include "orbit/tableau.hpp"

#include <algorithm>
#include <string>

namespace orbit {
namespace {

void require_permutation(const BipartiteDims& dims, const std::vector<int>& grid) {
  const auto n = static_cast<std::size_t>(dims.total());
  if (grid.size() != n) {
    throw Error(ErrorKind::IndexMismatch,
                "grid has " + std::to_string(grid.size()) + " cells, expected " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (int v : grid) {
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[v - 1]) {
      throw Error(ErrorKind::IndexMismatch, "grid entry " + std::to_string(v) + " repeated or out of range");
    }
    seen[v - 1] = true;
  }
}

// Sorted zero-based members of each line, lines ordered lexicographically, flattened.
std::vector<int> canonical_lines(std::vector<std::vector<int>> lines) {
  for (auto& line : lines) std::sort(line.begin(), line.end());
  std::sort(lines.begin(), lines.end());
  std::vector<int> flat;
  for (const auto& line : lines)
    for (int v : line) flat.push_back(v - 1);
  return flat;
}

void fill_tableaux(const BipartiteDims& dims, std::vector<int>& grid, std::vector<int>& row_len, int next,
                   std::vector<Tableau>& out) {
  if (next > dims.total()) {
    out.emplace_back(dims, grid);
    return;
  }
  for (int r = 0; r < dims.d_a; ++r) {
    if (row_len[r] == dims.d_b) continue;
    if (r > 0 && row_len[r - 1] <= row_len[r]) continue;
    grid[static_cast<std::size_t>(r * dims.d_b + row_len[r])] = next;
    ++row_len[r];
    fill_tableaux(dims, grid, row_len, next + 1, out);
    --row_len[r];
  }
}

}  // namespace

Arrangement::Arrangement(BipartiteDims dims, std::vector<int> grid) : dims_(dims), grid_(std::move(grid)) {
  require_permutation(dims_, grid_);
}

bool Arrangement::is_standard() const {
  for (int j = 0; j < dims_.d_a; ++j)
    for (int k = 0; k < dims_.d_b; ++k) {
      if (k + 1 < dims_.d_b && at(j, k) >= at(j, k + 1)) return false;
      if (j + 1 < dims_.d_a && at(j, k) >= at(j + 1, k)) return false;
    }
  return true;
}

Arrangement Arrangement::transposed() const {
  std::vector<int> t(grid_.size());
  for (int j = 0; j < dims_.d_a; ++j)
    for (int k = 0; k < dims_.d_b; ++k) t[static_cast<std::size_t>(k * dims_.d_a + j)] = at(j, k);
  return Arrangement(BipartiteDims(dims_.d_b, dims_.d_a), std::move(t));
}

std::vector<std::vector<int>> Arrangement::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(dims_.d_a));
  for (int j = 0; j < dims_.d_a; ++j)
    out[j].assign(grid_.begin() + j * dims_.d_b, grid_.begin() + (j + 1) * dims_.d_b);
  return out;
}

Tableau::Tableau(BipartiteDims dims, std::vector<int> grid) : Tableau(Arrangement(dims, std::move(grid))) {}

Tableau::Tableau(Arrangement arrangement) : Arrangement(std::move(arrangement)) {
  if (!is_standard()) throw Error(ErrorKind::IndexMismatch, "grid is not a standard Young tableau");
}

std::vector<Tableau> enumerate_tableaux(BipartiteDims dims) {
  if (dims.total() > kMaxEnumerationDim) {
    throw Error(ErrorKind::TooLarge,
                "tableau enumeration is capped at d_a * d_b <= 16, got " + std::to_string(dims.total()));
  }
  std::vector<Tableau> all;
  std::vector<int> grid(static_cast<std::size_t>(dims.total()), 0);
  std::vector<int> row_len(static_cast<std::size_t>(dims.d_a), 0);
  fill_tableaux(dims, grid, row_len, 1, all);

  if (dims.d_a == dims.d_b) {
    std::erase_if(all, [](const Tableau& t) { return t.transposed() < t; });
  }
  std::sort(all.begin(), all.end());
  return all;
}

void CandidateSet::reserve(std::size_t n) {
  staged_rows_.reserve(n);
  staged_cols_.reserve(n);
}

void CandidateSet::append(const Arrangement& a) {
  if (!(a.dims() == dims_)) throw Error(ErrorKind::IndexMismatch, "candidate dimensions differ from the set");
  staged_rows_.push_back(canonical_lines(a.rows()));
  staged_cols_.push_back(canonical_lines(a.transposed().rows()));
}

void CandidateSet::finish() {
  count_ = staged_rows_.size();
  stride_ = std::max<std::size_t>(kernels::kLaneWidth,
                                  (count_ + kernels::kLaneWidth - 1) / kernels::kLaneWidth * kernels::kLaneWidth);
  const auto cells = static_cast<std::size_t>(dims_.total());
  row_members_.assign(cells * stride_, 0);
  col_members_.assign(cells * stride_, 0);
  for (std::size_t lane = 0; lane < stride_; ++lane) {
    // Padding lanes repeat the last candidate.
    const std::size_t c = count_ == 0 ? 0 : std::min(lane, count_ - 1);
    if (count_ == 0) break;
    for (std::size_t slot = 0; slot < cells; ++slot) {
      row_members_[slot * stride_ + lane] = staged_rows_[c][slot];
      col_members_[slot * stride_ + lane] = staged_cols_[c][slot];
    }
  }
  staged_rows_.clear();
  staged_rows_.shrink_to_fit();
  staged_cols_.clear();
  staged_cols_.shrink_to_fit();
}

std::vector<double> CandidateSet::evaluate(const Spectrum& spectrum) const {
  if (spectrum.size() != static_cast<std::size_t>(dims_.total())) {
    throw Error(ErrorKind::IndexMismatch, "spectrum has " + std::to_string(spectrum.size()) +
                                              " entries, grid has " + std::to_string(dims_.total()));
  }
  std::vector<double> out(count_, 0.0);
  if (count_ == 0) return out;
  const kernels::CandidateView view{dims_.d_a, dims_.d_b, count_, stride_, row_members_, col_members_};
  kernels::classical_qmi(view, spectrum.values(), shannon_entropy(spectrum.values()), out);
  for (double& v : out) v = std::max(v, 0.0);
  return out;
}

double classical_state_qmi(const Arrangement& arrangement, const Spectrum& spectrum) {
  const CandidateSet set(arrangement.dims(), std::span<const Arrangement>(&arrangement, 1));
  return set.evaluate(spectrum).front();
}

}  // namespace orbit
