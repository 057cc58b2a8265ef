#pragma once

// JSON encodings used by the command-line tool. Doubles are written in the
// shortest form that parses back to the same bits.

#include "projconst/almostmin.hpp"
#include "projconst/matcore.hpp"
#include "projconst/relproj.hpp"
#include "projconst/search.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace projconst::io {

using json = nlohmann::json;

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// {"d": int, "rows": [[...], ...]}
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// {"d": int, "n": int, "columns": [[...], ...]}
json basis_to_json(const relproj::SubspaceBasis& e);
relproj::SubspaceBasis basis_from_json(const json& j);

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

/// {value, S, D, P, iterations, converged}
json search_result_to_json(const search::SearchResult& r);
search::SearchResult search_result_from_json(const json& j);

json certificate_to_json(const almostmin::Certificate& c);

/// {"d", "eta", "eps", "certificate", "converged", ...}; `dump_matrices`
/// adds P and S when they were materialized.
json pipeline_to_json(const almostmin::PipelineResult& r, bool dump_matrices);

json read_json_file(const std::string& path);

}  // namespace projconst::io
