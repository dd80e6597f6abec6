#include <doctest.h>

#include <cmath>

#include "orbit/extremize.hpp"
#include "orbit/marginal2q.hpp"
#include "support.hpp"

using namespace orbit;
using orbit::testing::random_spectrum;

namespace {

const Spectrum kExample({0.6, 0.3, 0.1, 0.0});

bool near(MarginalPoint p, double a, double b, double tol = 1e-12) {
  return std::abs(p.lambda_a - a) < tol && std::abs(p.lambda_b - b) < tol;
}

}  // namespace

TEST_CASE("region construction errors") {
  CHECK_THROWS_AS(MarginalRegion(Spectrum({0.5, 0.5})), Error);
  try {
    MarginalRegion(kExample, 2.5);
    FAIL("expected EnergyOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EnergyOutOfRange);
  }
  CHECK_NOTHROW(MarginalRegion(kExample, 2.0));
}

TEST_CASE("contains examples") {
  const MarginalRegion pure(Spectrum({1.0, 0.0, 0.0, 0.0}));
  for (double x : {0.0, 0.1, 0.25, 0.5}) CHECK(contains(pure, {x, x}));
  CHECK_FALSE(contains(pure, {0.1, 0.2}));
  CHECK_FALSE(contains(pure, {0.3, 0.29}));

  const MarginalRegion r(kExample);
  CHECK_FALSE(contains(r, {0.1, 0.1}));
  CHECK(contains(r, {0.1, 0.3}));
  CHECK(contains(r, {0.3, 0.1}));
  CHECK_FALSE(contains(r, {0.05, 0.4}));  // lambda_a below l3 + l4
}

TEST_CASE("extremal points") {
  auto check = [](const Spectrum& s, double a, double b) {
    const auto e = extremal_points(MarginalRegion(s));
    CHECK(near(e.min_point, a, b));
    CHECK(near(e.max_point, 0.5, 0.5));
  };
  check(Spectrum({1.0, 0.0, 0.0, 0.0}), 0.0, 0.0);
  check(Spectrum({0.5, 0.5, 0.0, 0.0}), 0.0, 0.5);
  check(kExample, 0.1, 0.3);
}

TEST_CASE("energy maximum point") {
  CHECK(near(energy_max_point(MarginalRegion(kExample, 1.0)), 0.5, 0.5));
  CHECK(near(energy_max_point(MarginalRegion(kExample, 0.6)), 0.3, 0.3));
  CHECK(near(energy_max_point(MarginalRegion(kExample, 1.4)), 0.3, 0.3));
  CHECK_THROWS_AS(energy_max_point(MarginalRegion(kExample)), Error);
  try {
    energy_max_point(MarginalRegion(kExample, 0.2));
    FAIL("expected InfeasibleEnergy");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InfeasibleEnergy);
  }
}

TEST_CASE("rasterized shapes") {
  SUBCASE("pure spectrum gives the diagonal") {
    const auto r = rasterize(MarginalRegion(Spectrum({1.0, 0.0, 0.0, 0.0})), 101);
    for (int i = 0; i < 101; ++i)
      for (int j = 0; j < 101; ++j) REQUIRE(r.at(i, j) == (i == j));
  }
  SUBCASE("maximally mixed spectrum gives the corner") {
    const auto r = rasterize(MarginalRegion(Spectrum({0.25, 0.25, 0.25, 0.25})), 101);
    int count = 0;
    for (int i = 0; i < 101; ++i)
      for (int j = 0; j < 101; ++j) count += r.at(i, j) ? 1 : 0;
    CHECK(count == 1);
    CHECK(r.at(100, 100));
  }
  SUBCASE("rank two spectrum gives a band") {
    const auto r = rasterize(MarginalRegion(Spectrum({0.8, 0.2, 0.0, 0.0})), 101);
    for (int i = 0; i < 101; ++i)
      for (int j = 0; j < 101; ++j) {
        const double a = r.axis[i];
        const double b = r.axis[j];
        const bool band = std::abs(a - b) <= 0.2 + 1e-9 && a + b >= 0.2 - 1e-9;
        // Nodes lie on multiples of 0.005, so stay away from the exact boundary.
        if (std::abs(std::abs(a - b) - 0.2) > 1e-9 && std::abs(a + b - 0.2) > 1e-9) REQUIRE(r.at(i, j) == band);
      }
  }
  SUBCASE("degenerate rank two spectrum gives a triangle") {
    const auto r = rasterize(MarginalRegion(Spectrum({0.5, 0.5, 0.0, 0.0})), 101);
    CHECK(r.at(0, 100));
    CHECK(r.at(100, 0));
    CHECK(r.at(100, 100));
    CHECK(r.at(50, 50));
    CHECK_FALSE(r.at(0, 0));
    CHECK_FALSE(r.at(20, 20));
  }
  SUBCASE("energy slice marks q") {
    const auto r = rasterize(MarginalRegion(kExample, 0.6), 101);
    REQUIRE(r.q.has_value());
    CHECK(near(*r.q, 0.3, 0.3));
    CHECK(r.at(20, 60));        // (0.1, 0.3)
    CHECK(r.at(60, 60));        // q itself
    CHECK_FALSE(r.at(70, 70));  // outside the energy slice
  }
  CHECK_THROWS_AS(rasterize(MarginalRegion(kExample), 1), Error);
}

TEST_CASE("orbit samples lie in the region") {
  Rng rng(71);
  for (int trial = 0; trial < 3; ++trial) {
    const Spectrum s = random_spectrum(4, rng);
    const MarginalRegion region(s);
    for (const auto& sample : sample_orbit_qmi(s, BipartiteDims(2, 2), 2000, static_cast<std::uint64_t>(trial)))
      REQUIRE(contains(region, *sample.marginals));
  }
}

TEST_CASE("extremal points are members and match constructed states") {
  Rng rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const Spectrum s = random_spectrum(4, rng);
    const MarginalRegion region(s);
    const auto e = extremal_points(region);
    REQUIRE(contains(region, e.min_point));
    REQUIRE(contains(region, e.max_point));

    const auto min_state = build_rho_min(s, BipartiteDims(2, 2));
    const MarginalPoint pm = marginal_point(min_state.density_matrix());
    REQUIRE(near(pm, e.min_point.lambda_a, e.min_point.lambda_b, 1e-10));
    REQUIRE(std::abs(mutual_information(min_state.density_matrix()) - i_min_two_qubit(s)) < 1e-8);
    REQUIRE(near(marginal_point(build_rho_max(s, BipartiteDims(2, 2))), 0.5, 0.5, 1e-8));

    const auto [lo, hi] = energy_window(s);
    const double energy = lo + 0.5 * (std::min(hi, 2.0 - lo) - lo);
    const MarginalRegion sliced(s, energy);
    REQUIRE(contains(sliced, energy_max_point(sliced)));
  }
}

TEST_CASE("region is convex and the energy slice is nested") {
  Rng rng(79);
  std::uniform_real_distribution<double> coord(0.0, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const Spectrum s = random_spectrum(4, rng);
    const MarginalRegion region(s);
    const MarginalRegion sliced(s, 2.0 * coord(rng) + 0.5);
    std::vector<MarginalPoint> members;
    for (int i = 0; i < 400 && members.size() < 20; ++i) {
      const MarginalPoint p{coord(rng), coord(rng)};
      if (contains(region, p)) members.push_back(p);
      if (contains(sliced, p)) REQUIRE(contains(region, p));
    }
    for (std::size_t i = 1; i < members.size(); ++i) {
      const auto p = members[i - 1];
      const auto q = members[i];
      for (int k = 0; k <= 10; ++k) {
        const double t = k / 10.0;
        REQUIRE(contains(region, {(1 - t) * p.lambda_a + t * q.lambda_a, (1 - t) * p.lambda_b + t * q.lambda_b}));
      }
    }
  }
}

TEST_CASE("marginal_point needs two qubits") {
  const double p6[] = {0.5, 0.5, 0, 0, 0, 0};
  CHECK_THROWS_AS(marginal_point(DensityMatrix::diagonal(p6, BipartiteDims(2, 3))), Error);
  const auto p = marginal_point(DensityMatrix::diagonal(kExample.values(), BipartiteDims(2, 2)));
  CHECK(near(p, 0.1, 0.3));
}
