#include <cmath>
#include <limits>

#include "orbit/kernels.hpp"

namespace orbit::kernels::scalar {
namespace {

inline double neg_xlog2x(double p) {
  return p >= std::numeric_limits<double>::min() ? -(p * std::log2(p)) : 0.0;
}

}  // namespace

double entropy_bits(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) h += neg_xlog2x(v);
  return h;
}

void log2(std::span<const double> in, std::span<double> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = std::log2(in[i]);
}

void classical_qmi(const CandidateView& cv, std::span<const double> lambda, double h_lambda,
                   std::span<double> out) {
  const std::size_t stride = cv.stride;
  for (std::size_t c = 0; c < cv.count; ++c) {
    double h_rows = 0.0;
    for (int r = 0; r < cv.rows; ++r) {
      double acc = 0.0;
      for (int k = 0; k < cv.cols; ++k) {
        acc += lambda[cv.row_members[(static_cast<std::size_t>(r) * cv.cols + k) * stride + c]];
      }
      h_rows += neg_xlog2x(acc);
    }
    double h_cols = 0.0;
    for (int s = 0; s < cv.cols; ++s) {
      double acc = 0.0;
      for (int k = 0; k < cv.rows; ++k) {
        acc += lambda[cv.col_members[(static_cast<std::size_t>(s) * cv.rows + k) * stride + c]];
      }
      h_cols += neg_xlog2x(acc);
    }
    out[c] = (h_rows + h_cols) - h_lambda;
  }
}

}  // namespace orbit::kernels::scalar
