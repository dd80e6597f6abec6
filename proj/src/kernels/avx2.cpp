#include <immintrin.h>

#include <array>
#include <cstring>
#include <limits>
#include <numbers>

#include "orbit/kernels.hpp"

namespace orbit::kernels::avx2 {
namespace {

// ln(m) = 2 atanh(s), s = (m - 1) / (m + 1). With m in [sqrt(1/2), sqrt(2)] we have
// s^2 < 0.0295, so twelve odd terms put the truncation error below 1e-18.
constexpr int kSeriesTerms = 12;

inline __m256d log2_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);

  // Biased exponent as a double: OR it into the mantissa of 2^52, then subtract.
  const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(exp_bits, magic)),
                            _mm256_set1_pd(4503599627370496.0 + 1023.0));

  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(std::numbers::sqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, one));

  const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d z = _mm256_mul_pd(s, s);
  __m256d poly = _mm256_set1_pd(1.0 / (2 * (kSeriesTerms - 1) + 1));
  for (int k = kSeriesTerms - 2; k >= 0; --k) {
    poly = _mm256_add_pd(_mm256_mul_pd(poly, z), _mm256_set1_pd(1.0 / (2 * k + 1)));
  }
  const __m256d ln_m = _mm256_mul_pd(_mm256_add_pd(s, s), poly);
  return _mm256_add_pd(e, _mm256_mul_pd(ln_m, _mm256_set1_pd(std::numbers::log2e)));
}

// -p log2 p, zero for p below the smallest normal double.
inline __m256d neg_xlog2x_pd(__m256d p) {
  const __m256d tiny = _mm256_set1_pd(std::numeric_limits<double>::min());
  const __m256d live = _mm256_cmp_pd(p, tiny, _CMP_GE_OQ);
  const __m256d safe = _mm256_blendv_pd(_mm256_set1_pd(1.0), p, live);
  const __m256d t = _mm256_mul_pd(safe, log2_pd(safe));
  return _mm256_sub_pd(_mm256_setzero_pd(), t);
}

inline double hsum(__m256d v) {
  alignas(32) std::array<double, 4> lanes;
  _mm256_store_pd(lanes.data(), v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

double entropy_bits(std::span<const double> p) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= p.size(); i += 4) {
    acc = _mm256_add_pd(acc, neg_xlog2x_pd(_mm256_loadu_pd(p.data() + i)));
  }
  if (i < p.size()) {
    alignas(32) std::array<double, 4> tail{0.0, 0.0, 0.0, 0.0};
    std::memcpy(tail.data(), p.data() + i, (p.size() - i) * sizeof(double));
    acc = _mm256_add_pd(acc, neg_xlog2x_pd(_mm256_load_pd(tail.data())));
  }
  return hsum(acc);
}

void log2(std::span<const double> in, std::span<double> out) {
  std::size_t i = 0;
  for (; i + 4 <= in.size(); i += 4) {
    _mm256_storeu_pd(out.data() + i, log2_pd(_mm256_loadu_pd(in.data() + i)));
  }
  if (i < in.size()) {
    alignas(32) std::array<double, 4> tail{1.0, 1.0, 1.0, 1.0};
    const std::size_t rest = in.size() - i;
    std::memcpy(tail.data(), in.data() + i, rest * sizeof(double));
    _mm256_store_pd(tail.data(), log2_pd(_mm256_load_pd(tail.data())));
    std::memcpy(out.data() + i, tail.data(), rest * sizeof(double));
  }
}

void classical_qmi(const CandidateView& cv, std::span<const double> lambda, double h_lambda,
                   std::span<double> out) {
  const std::size_t stride = cv.stride;
  const __m256d hl = _mm256_set1_pd(h_lambda);
  alignas(32) std::array<double, 4> lanes;

  for (std::size_t c0 = 0; c0 < cv.count; c0 += kLaneWidth) {
    __m256d h_rows = _mm256_setzero_pd();
    for (int r = 0; r < cv.rows; ++r) {
      __m256d acc = _mm256_setzero_pd();
      for (int k = 0; k < cv.cols; ++k) {
        const auto* idx = cv.row_members.data() + (static_cast<std::size_t>(r) * cv.cols + k) * stride + c0;
        const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx));
        acc = _mm256_add_pd(acc, _mm256_i32gather_pd(lambda.data(), vi, 8));
      }
      h_rows = _mm256_add_pd(h_rows, neg_xlog2x_pd(acc));
    }
    __m256d h_cols = _mm256_setzero_pd();
    for (int s = 0; s < cv.cols; ++s) {
      __m256d acc = _mm256_setzero_pd();
      for (int k = 0; k < cv.rows; ++k) {
        const auto* idx = cv.col_members.data() + (static_cast<std::size_t>(s) * cv.rows + k) * stride + c0;
        const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx));
        acc = _mm256_add_pd(acc, _mm256_i32gather_pd(lambda.data(), vi, 8));
      }
      h_cols = _mm256_add_pd(h_cols, neg_xlog2x_pd(acc));
    }
    _mm256_store_pd(lanes.data(), _mm256_sub_pd(_mm256_add_pd(h_rows, h_cols), hl));
    const std::size_t live = std::min(kLaneWidth, cv.count - c0);
    for (std::size_t l = 0; l < live; ++l) out[c0 + l] = lanes[l];
  }
}

}  // namespace orbit::kernels::avx2
