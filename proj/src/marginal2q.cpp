#include "orbit/marginal2q.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace orbit {
namespace {

double smaller_eigenvalue(const DensityMatrix& reduced) {
  const Spectrum s = spectrum_of(reduced);
  return std::min(s[1], 0.5);
}

}  // namespace

MarginalRegion::MarginalRegion(Spectrum spectrum, std::optional<double> energy)
    : spectrum_(std::move(spectrum)), energy_(energy) {
  if (spectrum_.size() != 4) {
    throw Error(ErrorKind::WrongDimension, "two-qubit region needs 4 eigenvalues, got " +
                                               std::to_string(spectrum_.size()));
  }
  if (energy_ && !(*energy_ >= 0.0 && *energy_ <= 2.0)) {
    throw Error(ErrorKind::EnergyOutOfRange, "energy " + std::to_string(*energy_) + " outside [0, 2]");
  }
}

bool contains(const MarginalRegion& region, MarginalPoint p) {
  const auto& l = region.spectrum();
  const double a = p.lambda_a;
  const double b = p.lambda_b;
  if (a < -kRegionTol || a > 0.5 + kRegionTol || b < -kRegionTol || b > 0.5 + kRegionTol) return false;

  const bool bravyi = a >= l[2] + l[3] - kRegionTol && b >= l[2] + l[3] - kRegionTol &&
                      a + b >= l[1] + l[2] + 2.0 * l[3] - kRegionTol &&
                      std::abs(a - b) <= std::min(l[0] - l[2], l[1] - l[3]) + kRegionTol;
  if (!bravyi) return false;
  if (const auto e = region.energy()) return a + b <= std::min(*e, 2.0 - *e) + kRegionTol;
  return true;
}

ExtremalPoints extremal_points(const MarginalRegion& region) {
  const auto& l = region.spectrum();
  // Unique 2x2 tableau [[1, 2], [3, 4]]: rows (l1 + l2, l3 + l4), columns (l1 + l3, l2 + l4).
  const MarginalPoint min_point{std::min(l[0] + l[1], l[2] + l[3]), std::min(l[0] + l[2], l[1] + l[3])};
  return {min_point, MarginalPoint{0.5, 0.5}};
}

MarginalPoint energy_max_point(const MarginalRegion& region) {
  const auto e = region.energy();
  if (!e) throw Error(ErrorKind::EnergyOutOfRange, "region has no energy constraint");
  const auto& l = region.spectrum();
  const double cap = std::min(*e, 2.0 - *e);
  const double floor_sum = l[1] + l[2] + 2.0 * l[3];
  if (cap < floor_sum - kRegionTol) {
    throw Error(ErrorKind::InfeasibleEnergy, "energy " + std::to_string(*e) +
                                                 " unreachable: lambda_a + lambda_b >= " +
                                                 std::to_string(floor_sum) + " on this orbit");
  }
  return {cap / 2.0, cap / 2.0};
}

Raster rasterize(const MarginalRegion& region, int grid_n) {
  if (grid_n < 2) throw Error(ErrorKind::InvalidMode, "grid must have at least 2 nodes per axis");
  Raster r;
  r.grid_n = grid_n;
  r.axis.resize(static_cast<std::size_t>(grid_n));
  for (int i = 0; i < grid_n; ++i) r.axis[i] = 0.5 * i / (grid_n - 1);
  r.inside.resize(static_cast<std::size_t>(grid_n) * grid_n);
  for (int ia = 0; ia < grid_n; ++ia)
    for (int ib = 0; ib < grid_n; ++ib)
      r.inside[static_cast<std::size_t>(ia * grid_n + ib)] = contains(region, {r.axis[ia], r.axis[ib]}) ? 1 : 0;
  r.markers = extremal_points(region);
  if (region.energy()) r.q = energy_max_point(region);
  return r;
}

MarginalPoint marginal_point(const DensityMatrix& rho) {
  const auto& dims = rho.dims();
  if (dims.d_a != 2 || dims.d_b != 2) throw Error(ErrorKind::WrongDimension, "marginal points need a 2x2 state");
  return {smaller_eigenvalue(partial_trace(rho, Subsystem::A)), smaller_eigenvalue(partial_trace(rho, Subsystem::B))};
}

}  // namespace orbit
