#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "orbit/io.hpp"
#include "support.hpp"

using namespace orbit;
namespace io = orbit::io;

TEST_CASE("number formatting") {
  CHECK(io::round_significant(0.054824648581651925) == 0.0548246485817);
  CHECK(io::round_significant(1234.56789012345678) == 1234.56789012);
  CHECK(io::round_significant(0.0) == 0.0);
  CHECK(std::isinf(io::round_significant(INFINITY)));
  CHECK(io::format_csv_number(0.054824648581651925) == "0.0548246");
  CHECK(io::format_csv_number(2.0) == "2");
  CHECK(io::format_csv_number(INFINITY) == "inf");
  CHECK(io::format_csv_number(-INFINITY) == "-inf");
}

TEST_CASE("density matrix JSON round trip") {
  Rng rng(107);
  const auto rho = orbit::testing::random_state(BipartiteDims(2, 3), rng);
  const auto j = io::to_json(rho);
  CHECK(j["d_a"] == 2);
  CHECK(j["d_b"] == 3);
  const auto back = io::density_matrix_from_json(j);
  CHECK(back.dims() == rho.dims());
  CHECK(orbit::testing::max_abs(back.matrix() - rho.matrix()) < 1e-11);

  const auto path = std::filesystem::temp_directory_path() / "orbit_io_test_state.json";
  std::ofstream(path) << j.dump();
  CHECK(orbit::testing::max_abs(io::read_density_matrix(path.string()).matrix() - rho.matrix()) < 1e-11);
  std::filesystem::remove(path);
}

TEST_CASE("malformed documents") {
  auto kind_of = [](const io::Json& j) -> std::optional<ErrorKind> {
    try {
      io::density_matrix_from_json(j);
    } catch (const Error& e) {
      return e.kind();
    }
    return std::nullopt;
  };
  CHECK(kind_of(io::Json::parse(R"({"d_a": 2})")) == ErrorKind::ParseError);
  CHECK(kind_of(io::Json::parse(R"({"d_a": 2, "d_b": 1, "re": [[1]], "im": [[0]]})")) == ErrorKind::InvalidDims);
  CHECK(kind_of(io::Json::parse(R"({"d_a": 2, "d_b": 2, "re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]]})")) ==
        ErrorKind::ParseError);
  CHECK(kind_of(io::Json::parse(
            R"({"d_a": 2, "d_b": 2, "re": [[1.1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,-0.1]], "im": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})")) ==
        ErrorKind::NotAState);
  CHECK_THROWS_AS(io::read_density_matrix("/nonexistent/state.json"), Error);
  CHECK_THROWS_AS(io::spectrum_from_json(io::Json::parse(R"(["a"])")), Error);
}

TEST_CASE("spectrum and extremal result JSON") {
  const Spectrum s({0.6, 0.3, 0.1, 0.0});
  CHECK(io::to_json(s).dump() == "[0.6,0.3,0.1,0.0]");
  const auto back = io::spectrum_from_json(io::Json::parse("[0.1, 0.6, 0.3, 0]"));
  CHECK(back[0] == 0.6);

  const auto r = extremize(s, BipartiteDims(2, 2));
  const auto j = io::to_json(r, BipartiteDims(2, 2), std::nullopt);
  CHECK(j["i_min_bits"].get<double>() == io::round_significant(0.054824648581651925));
  CHECK(j["i_max_bits"].get<double>() == io::round_significant(0.7045381557616781));
  CHECK(j["delta_i_max_bits"].get<double>() == io::round_significant(0.6497135071800262));
  CHECK(j["minimizing_tableau"].dump() == "[[1,2],[3,4]]");
  CHECK_FALSE(j.contains("energy"));

  const auto with_e = io::to_json(r, BipartiteDims(2, 2), io::EnergyExtras{0.6, 0.4122953056414116, {0.3, 0.3}});
  CHECK(with_e["delta_e_bits"].get<double>() == io::round_significant(0.4122953056414116));
  CHECK(with_e["q_point"].dump() == "[0.3,0.3]");
}

TEST_CASE("region CSV and markers") {
  const auto raster = rasterize(MarginalRegion(Spectrum({0.6, 0.3, 0.1, 0.0}), 0.6), 3);
  std::ostringstream out;
  io::write_region_csv(out, raster);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "lambda_b,lambda_a,inside");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 9);

  const auto m = io::markers_to_json(raster);
  CHECK(m["min"].dump() == "[0.3,0.1]");  // [lambda_b, lambda_a]
  CHECK(m["max"].dump() == "[0.5,0.5]");
  CHECK(m["q"].dump() == "[0.3,0.3]");
}

TEST_CASE("collision CSV") {
  ThermalScenario sc;
  sc.t_a = 0.5;
  sc.t_b = 2.0;
  const auto trace = collision_simulate(sc, {3, CollisionUnitary::partial_swap, 0.3, Decorrelation::full_product, 0});
  std::ostringstream out;
  io::write_collision_csv(out, trace);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "step,s_a,s_b,t_a,t_b,qmi,q_a");
  std::getline(in, line);
  CHECK(line.rfind("0,", 0) == 0);
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
}
