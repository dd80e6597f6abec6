#pragma once

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "orbit/qcore.hpp"

namespace orbit::testing {

/// Flat Dirichlet sample of length n.
inline std::vector<double> random_distribution(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (double& v : p) total += (v = e(rng));
  for (double& v : p) v /= total;
  return p;
}

inline Spectrum random_spectrum(std::size_t n, Rng& rng) { return Spectrum::normalized(random_distribution(n, rng)); }

/// Haar-random state with a random spectrum (full rank almost surely).
inline DensityMatrix random_state(BipartiteDims dims, Rng& rng) {
  const auto p = random_distribution(static_cast<std::size_t>(dims.total()), rng);
  const Matrix u = haar_unitary(dims.total(), rng);
  Matrix m = u * DensityMatrix::diagonal(p).matrix() * u.adjoint();
  return DensityMatrix(std::move(m), dims);
}

/// Independent entropy used by oracles: plain natural log, converted at the end.
inline double naive_entropy_bits(std::span<const double> p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return h / std::log(2.0);
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace orbit::testing
