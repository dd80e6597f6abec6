#pragma once

// File formats. JSON numbers are rounded to 12 significant digits, CSV numbers to 6.
//
//   density matrix  {"d_a": int, "d_b": int, "re": [[...]], "im": [[...]]}
//   spectrum        [l1, l2, ...]
//   extremal result {"spectrum", "i_min_bits", "i_max_bits", "delta_i_max_bits",
//                    "minimizing_tableau", "energy" (optional), ...}
//   region CSV      lambda_b,lambda_a,inside
//   region markers  {"min": [lambda_b, lambda_a], "max": [...], "q": [...] (optional)}
//   collision CSV   step,s_a,s_b,t_a,t_b,qmi,q_a

#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"

#include "orbit/extremize.hpp"
#include "orbit/marginal2q.hpp"
#include "orbit/qcore.hpp"
#include "orbit/thermo.hpp"

namespace orbit::io {

using Json = nlohmann::ordered_json;

/// Rounds to `digits` significant decimal digits (non-finite values pass through).
double round_significant(double x, int digits = 12);

/// Formats with `digits` significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_csv_number(double x, int digits = 6);

Json to_json(const DensityMatrix& rho);
/// Throws ParseError for malformed documents, NotAState for invalid matrices.
DensityMatrix density_matrix_from_json(const Json& j);
DensityMatrix read_density_matrix(const std::string& path);

Json to_json(const Spectrum& spectrum);
Spectrum spectrum_from_json(const Json& j);

Json to_json(const Arrangement& arrangement);

struct EnergyExtras {
  double energy = 0.0;
  double delta_e_bits = 0.0;
  MarginalPoint q;
};

Json to_json(const ExtremalResult& result, BipartiteDims dims, const std::optional<EnergyExtras>& energy);

Json markers_to_json(const Raster& raster);
void write_region_csv(std::ostream& out, const Raster& raster);

Json to_json(const HeatFlowReport& report);
Json to_json(const AnomalousHeatBound& bound);

void write_collision_csv(std::ostream& out, const CollisionTrace& trace);

}  // namespace orbit::io
