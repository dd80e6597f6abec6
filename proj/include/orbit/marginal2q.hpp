#pragma once

// Two-qubit marginal spectra compatible with a fixed joint spectrum.
//
// A point (lambda_a, lambda_b) holds the smaller eigenvalue of each reduced state. With the
// joint spectrum l1 >= l2 >= l3 >= l4 it is reachable on the unitary orbit iff
//   lambda_a >= l3 + l4,  lambda_b >= l3 + l4,
//   lambda_a + lambda_b >= l2 + l3 + 2 l4,
//   |lambda_a - lambda_b| <= min(l1 - l3, l2 - l4).
// With H_A = H_B = |1><1| and energy E, the local energies range over [lambda, 1 - lambda],
// so a point is energy-compatible iff lambda_a + lambda_b <= min(E, 2 - E).

#include <cstdint>
#include <optional>
#include <vector>

#include "orbit/qcore.hpp"

namespace orbit {

inline constexpr double kRegionTol = 1e-12;

struct MarginalPoint {
  double lambda_a = 0.0;
  double lambda_b = 0.0;
};

class MarginalRegion {
 public:
  /// Throws WrongDimension unless the spectrum has four entries and EnergyOutOfRange
  /// unless 0 <= energy <= 2.
  explicit MarginalRegion(Spectrum spectrum, std::optional<double> energy = std::nullopt);

  const Spectrum& spectrum() const { return spectrum_; }
  std::optional<double> energy() const { return energy_; }

 private:
  Spectrum spectrum_;
  std::optional<double> energy_;
};

bool contains(const MarginalRegion& region, MarginalPoint p);

struct ExtremalPoints {
  MarginalPoint min_point;
  MarginalPoint max_point;
};

/// Marginals of the minimally correlated classical state and of the Bell-diagonal maximum.
/// Any energy on the region is ignored.
ExtremalPoints extremal_points(const MarginalRegion& region);

/// (m, m) with m = min(E, 2 - E) / 2. Throws InfeasibleEnergy when the energy slice is empty,
/// EnergyOutOfRange when the region has no energy.
MarginalPoint energy_max_point(const MarginalRegion& region);

/// Membership sampled on the nodes 0, h, ..., 1/2 with h = 1 / (2 (grid_n - 1)).
struct Raster {
  int grid_n = 0;
  std::vector<double> axis;
  std::vector<std::uint8_t> inside;  // [ia * grid_n + ib]: lambda_a = axis[ia], lambda_b = axis[ib]
  ExtremalPoints markers;
  std::optional<MarginalPoint> q;

  bool at(int ia, int ib) const { return inside[static_cast<std::size_t>(ia * grid_n + ib)] != 0; }
};

/// Throws InvalidMode for grid_n < 2.
Raster rasterize(const MarginalRegion& region, int grid_n);

/// Smaller eigenvalues of both reduced states of a 2x2 bipartite state.
MarginalPoint marginal_point(const DensityMatrix& rho);

}  // namespace orbit
