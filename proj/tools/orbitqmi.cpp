// orbitqmi: command-line front end for the orbit library.
//
// Exit codes: 0 success, 1 domain error (or a failed verify), 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "orbit/extremize.hpp"
#include "orbit/io.hpp"
#include "orbit/kernels.hpp"
#include "orbit/marginal2q.hpp"
#include "orbit/thermo.hpp"

namespace {

using namespace orbit;
using io::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Shared {
  std::string spectrum;
  std::string state;
  std::string dims;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
};

void add_shared(CLI::App* cmd, Shared& s, bool needs_input, const std::string& default_format) {
  if (needs_input) {
    auto* sp = cmd->add_option("--spectrum", s.spectrum, "joint spectrum as a comma list");
    auto* st = cmd->add_option("--state", s.state, "density matrix JSON file");
    sp->excludes(st);
  }
  cmd->add_option("--dims", s.dims, "subsystem dimensions AxB");
  cmd->add_option("--seed", s.seed, "random seed")->capture_default_str();
  cmd->add_option("--out", s.out, "output path (default stdout)");
  s.format = default_format;
  cmd->add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

void configure_logging() {
  auto logger = spdlog::stderr_color_st("orbitqmi");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("ORBIT_LOG");
  const std::string level = env ? env : "info";
  if (level == "quiet") {
    spdlog::set_level(spdlog::level::off);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    spdlog::set_level(spdlog::level::info);
  }
}

std::optional<BipartiteDims> parse_dims(const std::string& text) {
  if (text.empty()) return std::nullopt;
  static const std::regex pattern(R"((\d+)x(\d+))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw UsageError("--dims: expected AxB, got '" + text + "'");
  return BipartiteDims(std::stoi(m[1]), std::stoi(m[2]));
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError("--spectrum: '" + item + "' is not a number");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError("--spectrum: empty list");
  return values;
}

struct Input {
  Spectrum spectrum;
  BipartiteDims dims;
  std::optional<DensityMatrix> state;
};

Input load_input(const Shared& s) {
  const auto dims = parse_dims(s.dims);
  if (!s.state.empty()) {
    DensityMatrix rho = io::read_density_matrix(s.state);
    if (dims && !(*dims == rho.dims())) {
      throw Error(ErrorKind::DimensionMismatch, "--dims " + s.dims + " disagrees with the state file");
    }
    spdlog::debug("loaded {}x{} state from {}", rho.dims().d_a, rho.dims().d_b, s.state);
    return Input{spectrum_of(rho), rho.dims(), rho};
  }
  if (s.spectrum.empty()) throw UsageError("one of --spectrum or --state is required");
  const auto values = parse_list(s.spectrum);
  if (!std::is_sorted(values.begin(), values.end(), std::greater<>())) {
    spdlog::info("spectrum sorted into non-increasing order");
  }
  Spectrum spectrum(values);
  BipartiteDims d(2, 2);
  if (dims) {
    d = *dims;
  } else {
    const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(values.size()))));
    if (root * root != static_cast<int>(values.size())) {
      throw UsageError("--dims is required for a spectrum of length " + std::to_string(values.size()));
    }
    d = BipartiteDims(root, root);
  }
  if (static_cast<int>(spectrum.size()) != d.total()) {
    throw Error(ErrorKind::IndexMismatch, "spectrum has " + std::to_string(spectrum.size()) + " entries, dims need " +
                                              std::to_string(d.total()));
  }
  return Input{std::move(spectrum), d, std::nullopt};
}

void emit(const Shared& s, const std::string& text) {
  if (s.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(s.out);
  if (!f) throw UsageError("--out: cannot write '" + s.out + "'");
  f << text;
  spdlog::debug("wrote {}", s.out);
}

void emit_json(const Shared& s, const Json& j) { emit(s, j.dump(2) + "\n"); }

void require_json(const Shared& s, const char* command) {
  if (s.format != "json") throw UsageError(std::string("--format: ") + command + " only writes json");
}

// ---- subcommands ----

int run_extremize(const Shared& s, std::optional<double> energy) {
  require_json(s, "extremize");
  const Input in = load_input(s);
  const ExtremalResult r = extremize(in.spectrum, in.dims);
  std::optional<io::EnergyExtras> extras;
  if (energy) {
    if (!(in.dims == BipartiteDims(2, 2))) {
      throw Error(ErrorKind::WrongDimension, "--energy applies to two qubits only");
    }
    const MarginalRegion region(in.spectrum, *energy);
    extras = io::EnergyExtras{*energy, delta_i_max_energy(in.spectrum, *energy), energy_max_point(region)};
  }
  emit_json(s, io::to_json(r, in.dims, extras));
  return 0;
}

int run_region(const Shared& s, int grid, std::optional<double> energy, const std::string& markers) {
  const Input in = load_input(s);
  const Raster raster = rasterize(MarginalRegion(in.spectrum, energy), grid);
  if (!markers.empty()) {
    std::ofstream f(markers);
    if (!f) throw UsageError("--markers: cannot write '" + markers + "'");
    f << io::markers_to_json(raster).dump(2) << "\n";
  }
  if (s.format == "csv") {
    std::ostringstream out;
    io::write_region_csv(out, raster);
    emit(s, out.str());
  } else {
    Json inside = Json::array();
    for (int ia = 0; ia < raster.grid_n; ++ia) {
      Json row = Json::array();
      for (int ib = 0; ib < raster.grid_n; ++ib) row.push_back(raster.at(ia, ib) ? 1 : 0);
      inside.push_back(std::move(row));
    }
    Json axis = Json::array();
    for (double x : raster.axis) axis.push_back(io::round_significant(x));
    emit_json(s, Json{{"spectrum", io::to_json(in.spectrum)},
                      {"axis", std::move(axis)},
                      {"inside", std::move(inside)},
                      {"markers", io::markers_to_json(raster)}});
  }
  return 0;
}

int run_szilard(const Shared& s, double temp) {
  require_json(s, "szilard");
  const Input in = load_input(s);
  Json j;
  j["temperature"] = temp;
  if (in.state) {
    j["source"] = "state";
    j["work"] = io::round_significant(szilard_work(*in.state, temp));
    j["refinery_gain"] = io::round_significant(refinery_gain(*in.state, temp));
  } else {
    const ExtremalResult r = extremize(in.spectrum, in.dims);
    j["source"] = "spectrum";
    j["work_rho_max"] = io::round_significant(szilard_work(r.maximizer, temp));
    j["work_rho_min"] = io::round_significant(szilard_work(r.minimizer.density_matrix(), temp));
    j["refinery_gain"] = io::round_significant(refinery_gain(r.maximizer, temp));
  }
  emit_json(s, j);
  return 0;
}

int run_heatflow(const Shared& s, double ta, double tb, const std::string& after, bool worst_case) {
  require_json(s, "heatflow");
  ThermalScenario sc;
  sc.t_a = ta;
  sc.t_b = tb;
  sc.validate();
  if (worst_case) {
    if (!after.empty()) throw UsageError("--after cannot be combined with --worst-case");
    const Input in = load_input(s);
    emit_json(s, io::to_json(max_anomalous_heat(in.spectrum, sc)));
    return 0;
  }
  if (s.state.empty()) throw UsageError("heatflow needs --state or --worst-case");
  const Input in = load_input(s);
  if (after.empty()) {
    emit_json(s, io::to_json(max_anomalous_heat(*in.state, sc)));
    return 0;
  }
  const DensityMatrix final_state = io::read_density_matrix(after);
  emit_json(s, io::to_json(heat_flow_bound_check(*in.state, final_state, sc)));
  return 0;
}

int run_collide(const Shared& s, double ta, double tb, const CollisionConfig& config) {
  ThermalScenario sc;
  sc.t_a = ta;
  sc.t_b = tb;
  const CollisionTrace trace = collision_simulate(sc, config);
  if (s.format == "csv") {
    std::ostringstream out;
    io::write_collision_csv(out, trace);
    emit(s, out.str());
    return 0;
  }
  Json rows = Json::array();
  for (const auto& st : trace.steps) {
    auto num = [](double x) { return std::isfinite(x) ? Json(io::round_significant(x)) : Json(nullptr); };
    rows.push_back(Json{{"step", st.step},
                        {"s_a", num(st.s_a)},
                        {"s_b", num(st.s_b)},
                        {"t_a", num(st.t_a)},
                        {"t_b", num(st.t_b)},
                        {"qmi", num(st.qmi)},
                        {"q_a", num(st.q_a)}});
  }
  emit_json(s, Json{{"steps", std::move(rows)}});
  return 0;
}

int run_verify(const Shared& s, int samples) {
  require_json(s, "verify");
  if (samples < 1) throw UsageError("--samples must be positive");
  const Input in = load_input(s);
  const double i_min = build_rho_min(in.spectrum, in.dims).qmi_bits;
  const double h = shannon_entropy(in.spectrum.values());
  const double i_max = 2.0 * std::log2(in.dims.min_dim()) - h;
  // For d_a != d_b the Bell-basis value is attainable but not an upper bound.
  const bool square = in.dims.d_a == in.dims.d_b;
  const double i_max_bound = square ? i_max : std::min(2.0 * std::log2(in.dims.min_dim()), std::log2(in.dims.total()) - h);
  const auto drawn = sample_orbit_qmi(in.spectrum, in.dims, samples, s.seed);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  int qmi_violations = 0;
  int region_violations = 0;
  std::optional<MarginalRegion> region;
  if (in.dims == BipartiteDims(2, 2)) region.emplace(in.spectrum);
  for (const auto& d : drawn) {
    lo = std::min(lo, d.qmi_bits);
    hi = std::max(hi, d.qmi_bits);
    if (d.qmi_bits < i_min - 1e-6 || d.qmi_bits > i_max_bound + 1e-6) ++qmi_violations;
    if (region && d.marginals && !contains(*region, *d.marginals)) ++region_violations;
  }
  const bool ok = qmi_violations == 0 && region_violations == 0;
  Json j{{"spectrum", io::to_json(in.spectrum)},
         {"dims", std::to_string(in.dims.d_a) + "x" + std::to_string(in.dims.d_b)},
         {"samples", samples},
         {"seed", s.seed},
         {"i_min_bits", io::round_significant(i_min)},
         {"i_max_bits", io::round_significant(i_max)},
         {"upper_bound_bits", io::round_significant(i_max_bound)},
         {"sampled_min_bits", io::round_significant(lo)},
         {"sampled_max_bits", io::round_significant(hi)},
         {"qmi_violations", qmi_violations}};
  if (region) j["region_violations"] = region_violations;
  j["ok"] = ok;
  emit_json(s, j);
  if (!ok) spdlog::error("{} samples outside the orbit bounds", qmi_violations + region_violations);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Extremal mutual information on unitary orbits"};
  app.require_subcommand(1);

  Shared ex_s, rg_s, sz_s, hf_s, co_s, ve_s;

  auto* ex = app.add_subcommand("extremize", "minimum and maximum QMI on the orbit of a spectrum");
  add_shared(ex, ex_s, true, "json");
  std::optional<double> ex_energy;
  ex->add_option("--energy", ex_energy, "total energy for the two-qubit energy-conserving maximum");

  auto* rg = app.add_subcommand("region", "rasterized two-qubit marginal region");
  add_shared(rg, rg_s, true, "csv");
  int grid = 101;
  std::optional<double> rg_energy;
  std::string markers;
  rg->add_option("--grid", grid, "nodes per axis")->capture_default_str();
  rg->add_option("--energy", rg_energy, "restrict to an energy slice");
  rg->add_option("--markers", markers, "write extremal markers JSON here");

  auto* sz = app.add_subcommand("szilard", "Szilard work and refinery gain");
  add_shared(sz, sz_s, true, "json");
  double temp = 1.0;
  sz->add_option("--temp", temp, "bath temperature")->capture_default_str();

  auto* hf = app.add_subcommand("heatflow", "heat-flow bounds for thermal marginals");
  add_shared(hf, hf_s, true, "json");
  double hf_ta = 1.0, hf_tb = 2.0;
  std::string after;
  bool worst_case = false;
  hf->add_option("--ta", hf_ta, "temperature of A")->capture_default_str();
  hf->add_option("--tb", hf_tb, "temperature of B")->capture_default_str();
  hf->add_option("--after", after, "state after the evolution (JSON); checks the heat-flow laws");
  hf->add_flag("--worst-case", worst_case, "bound over the orbit of --spectrum");

  auto* co = app.add_subcommand("collide", "repeated-collision equilibration");
  add_shared(co, co_s, false, "csv");
  double co_ta = 0.5, co_tb = 2.0;
  CollisionConfig config;
  std::string mode = "product";
  std::string unitary = "swap";
  co->add_option("--ta", co_ta, "initial temperature of A")->capture_default_str();
  co->add_option("--tb", co_tb, "initial temperature of B")->capture_default_str();
  co->add_option("--theta", config.theta, "partial swap angle")->capture_default_str();
  co->add_option("--steps", config.steps, "number of collisions")->capture_default_str();
  co->add_option("--mode", mode, "product or dephase")->check(CLI::IsMember({"product", "dephase"}))->capture_default_str();
  co->add_option("--unitary", unitary, "swap or random")->check(CLI::IsMember({"swap", "random"}))->capture_default_str();

  auto* ve = app.add_subcommand("verify", "Haar-sampling check of the orbit bounds");
  add_shared(ve, ve_s, true, "json");
  int samples = 10000;
  ve->add_option("--samples", samples, "number of Haar samples")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  spdlog::debug("kernel variant: {}", kernels::isa_name(kernels::active_isa()));
  try {
    if (*ex) return run_extremize(ex_s, ex_energy);
    if (*rg) return run_region(rg_s, grid, rg_energy, markers);
    if (*sz) return run_szilard(sz_s, temp);
    if (*hf) return run_heatflow(hf_s, hf_ta, hf_tb, after, worst_case);
    if (*co) {
      if (co_s.dims.size() && co_s.dims != "2x2") throw UsageError("--dims: collide runs on two qubits");
      config.seed = co_s.seed;
      config.mode = mode == "product" ? Decorrelation::full_product : Decorrelation::dephase_to_minimal;
      config.unitary = unitary == "swap" ? CollisionUnitary::partial_swap : CollisionUnitary::random_strong;
      return run_collide(co_s, co_ta, co_tb, config);
    }
    if (*ve) return run_verify(ve_s, samples);
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 2;
}
