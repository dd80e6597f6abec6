#pragma once

// Arithmetic hot loops with a scalar reference and an AVX2 variant picked at runtime.
//
// The scalar path is the reference. The AVX2 path evaluates log2 with its own polynomial,
// so results agree with the scalar path to a few ulp rather than bitwise. Within one
// process every caller goes through the same dispatched variant, which keeps comparisons
// between code paths bitwise reproducible.
//
// ORBIT_SIMD=scalar in the environment forces the scalar path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace orbit::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);

/// Variant used by the dispatched entry points. Fixed at first use.
Isa active_isa();

/// Candidate classical states in structure-of-arrays form, `stride` lanes per slot.
///
/// Row r of candidate c sums lambda over row_members[(r * cols + k) * stride + c] for
/// k < cols; column s sums over col_members[(s * rows + k) * stride + c] for k < rows.
/// Indices are zero-based into lambda. `stride` is a multiple of 4 and lanes in
/// [count, stride) hold valid (duplicated) indices.
struct CandidateView {
  int rows = 0;
  int cols = 0;
  std::size_t count = 0;
  std::size_t stride = 0;
  std::span<const std::int32_t> row_members;
  std::span<const std::int32_t> col_members;
};

inline constexpr std::size_t kLaneWidth = 4;

/// -sum p log2 p with 0 log 0 = 0.
double entropy_bits(std::span<const double> p);

/// log2 of each positive input; writes out[i].
void log2(std::span<const double> in, std::span<double> out);

/// out[c] = H(row sums of c) + H(column sums of c) - h_lambda, in bits.
void classical_qmi(const CandidateView& candidates, std::span<const double> lambda, double h_lambda,
                   std::span<double> out);

namespace scalar {
double entropy_bits(std::span<const double> p);
void log2(std::span<const double> in, std::span<double> out);
void classical_qmi(const CandidateView& candidates, std::span<const double> lambda, double h_lambda,
                   std::span<double> out);
}  // namespace scalar

namespace avx2 {
// Callable only when isa_available(Isa::avx2).
double entropy_bits(std::span<const double> p);
void log2(std::span<const double> in, std::span<double> out);
void classical_qmi(const CandidateView& candidates, std::span<const double> lambda, double h_lambda,
                   std::span<double> out);
}  // namespace avx2

}  // namespace orbit::kernels
