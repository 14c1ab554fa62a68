#pragma once

#include <string>

#include <json.hpp>

#include "cuspcert/bounds.hpp"
#include "cuspcert/hermitian.hpp"
#include "cuspcert/isometry.hpp"
#include "cuspcert/lattice.hpp"
#include "cuspcert/siegel.hpp"

namespace cuspcert {

// Matrices are arrays of rows, each entry an [re, im] pair of doubles.
nlohmann::json matrix_to_json(const SquareMatrix& m);
SquareMatrix matrix_from_json(const nlohmann::json& j);

// {"zeta": [[re, im], ...], "v": double, "u": double}
nlohmann::json point_to_json(const SiegelPoint& p);
SiegelPoint point_from_json(const nlohmann::json& j);

nlohmann::json isometry_to_json(const IsometryClass& cls);

nlohmann::json census_to_json(const WordBallCensus& c);

// Non-finite linear values are encoded as the strings "inf"/"-inf"; JSON
// has no infinity literal and the overflow sentinel must survive a round
// trip.
nlohmann::json extended_to_json(double x);
double extended_from_json(const nlohmann::json& j);

nlohmann::json bound_report_to_json(const bounds::BoundReport& r);
bounds::BoundReport bound_report_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);

}  // namespace cuspcert
