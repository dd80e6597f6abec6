#include "orbit/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace orbit::io {
namespace {

Json number(double x) {
  if (!std::isfinite(x)) return Json(nullptr);
  return Json(round_significant(x));
}

Json point(MarginalPoint p) { return Json::array({number(p.lambda_b), number(p.lambda_a)}); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

std::string format_csv_number(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x == 0.0 ? 0.0 : x);
  return buf;
}

Json to_json(const DensityMatrix& rho) {
  const auto& dims = rho.dims();
  Json re = Json::array();
  Json im = Json::array();
  for (int i = 0; i < rho.size(); ++i) {
    Json rr = Json::array();
    Json ir = Json::array();
    for (int j = 0; j < rho.size(); ++j) {
      rr.push_back(number(rho.matrix()(i, j).real()));
      ir.push_back(number(rho.matrix()(i, j).imag()));
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return Json{{"d_a", dims.d_a}, {"d_b", dims.d_b}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix density_matrix_from_json(const Json& j) {
  try {
    const BipartiteDims dims(field(j, "d_a").get<int>(), field(j, "d_b").get<int>());
    const Json& re = field(j, "re");
    const Json& im = field(j, "im");
    const int n = dims.total();
    if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n) {
      throw Error(ErrorKind::ParseError, "re/im must be " + std::to_string(n) + "x" + std::to_string(n) + " arrays");
    }
    Matrix m(n, n);
    for (int r = 0; r < n; ++r) {
      if (!re[r].is_array() || !im[r].is_array() || static_cast<int>(re[r].size()) != n ||
          static_cast<int>(im[r].size()) != n) {
        throw Error(ErrorKind::ParseError, "row " + std::to_string(r) + " has the wrong length");
      }
      for (int c = 0; c < n; ++c) m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
    }
    return DensityMatrix(std::move(m), dims);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

DensityMatrix read_density_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  return density_matrix_from_json(j);
}

Json to_json(const Spectrum& spectrum) {
  Json out = Json::array();
  for (double v : spectrum.values()) out.push_back(number(v));
  return out;
}

Spectrum spectrum_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "spectrum must be a JSON array");
  std::vector<double> v;
  try {
    for (const auto& x : j) v.push_back(x.get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return Spectrum(std::move(v));
}

Json to_json(const Arrangement& arrangement) {
  Json out = Json::array();
  for (const auto& row : arrangement.rows()) out.push_back(row);
  return out;
}

Json to_json(const ExtremalResult& result, BipartiteDims dims, const std::optional<EnergyExtras>& energy) {
  Json out{{"spectrum", to_json(result.minimizer.spectrum)},
           {"dims", std::to_string(dims.d_a) + "x" + std::to_string(dims.d_b)},
           {"i_min_bits", number(result.i_min)},
           {"i_max_bits", number(result.i_max)},
           {"delta_i_max_bits", number(result.delta_i_max)},
           {"minimizing_tableau", to_json(result.minimizer.tableau)}};
  if (energy) {
    out["energy"] = number(energy->energy);
    out["delta_e_bits"] = number(energy->delta_e_bits);
    out["q_point"] = point(energy->q);
  }
  return out;
}

Json markers_to_json(const Raster& raster) {
  Json out{{"min", point(raster.markers.min_point)}, {"max", point(raster.markers.max_point)}};
  if (raster.q) out["q"] = point(*raster.q);
  return out;
}

void write_region_csv(std::ostream& out, const Raster& raster) {
  out << "lambda_b,lambda_a,inside\n";
  for (int ia = 0; ia < raster.grid_n; ++ia)
    for (int ib = 0; ib < raster.grid_n; ++ib)
      out << format_csv_number(raster.axis[ib]) << ',' << format_csv_number(raster.axis[ia]) << ','
          << (raster.at(ia, ib) ? 1 : 0) << '\n';
}

Json to_json(const HeatFlowReport& r) {
  return Json{{"q_a", number(r.q_a)},
              {"q_b", number(r.q_b)},
              {"delta_s_a_nats", number(r.delta_s_a)},
              {"delta_s_b_nats", number(r.delta_s_b)},
              {"delta_i_nats", number(r.delta_i)},
              {"local_slack", number(r.local_slack)},
              {"bound_slack", number(r.bound_slack)},
              {"bound_satisfied", r.bound_satisfied},
              {"anomalous", r.anomalous},
              {"witness_threshold", number(r.witness_threshold)},
              {"witness_triggered", r.witness_triggered}};
}

Json to_json(const AnomalousHeatBound& b) {
  return Json{{"max_anomalous_heat", number(b.max_heat)},
              {"witness_threshold", number(b.witness_threshold)},
              {"qmi_nats", number(b.qmi_nats)},
              {"i_min_nats", number(b.i_min_nats)},
              {"qmi_source", std::string(qmi_source_name(b.source))}};
}

void write_collision_csv(std::ostream& out, const CollisionTrace& trace) {
  out << "step,s_a,s_b,t_a,t_b,qmi,q_a\n";
  for (const auto& s : trace.steps) {
    out << s.step << ',' << format_csv_number(s.s_a) << ',' << format_csv_number(s.s_b) << ','
        << format_csv_number(s.t_a) << ',' << format_csv_number(s.t_b) << ',' << format_csv_number(s.qmi) << ','
        << format_csv_number(s.q_a) << '\n';
  }
}

}  // namespace orbit::io
