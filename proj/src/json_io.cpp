#include "projconst/json_io.hpp"

#include <fstream>

namespace projconst::io {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw FormatError(what);
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"d", m.rows()}, {"rows", std::move(rows)}};
}

Matrix matrix_from_json(const json& j) {
  require(j.is_object() && j.contains("d") && j.contains("rows"),
          "matrix JSON needs \"d\" and \"rows\"");
  require(j["d"].is_number_integer(), "matrix JSON: \"d\" must be an integer");
  const auto d = j["d"].get<long>();
  const json& rows = j["rows"];
  require(d >= 1 && rows.is_array() && static_cast<long>(rows.size()) == d,
          "matrix JSON: \"rows\" must hold d rows");
  Matrix m(d, d);
  for (long i = 0; i < d; ++i) {
    require(rows[i].is_array() && static_cast<long>(rows[i].size()) == d,
            "matrix JSON: every row must hold d numbers");
    for (long k = 0; k < d; ++k) {
      require(rows[i][k].is_number(), "matrix JSON: entries must be numbers");
      m(i, k) = rows[i][k].get<double>();
    }
  }
  return m;
}

json basis_to_json(const relproj::SubspaceBasis& e) {
  const Matrix& v = e.columns();
  json cols = json::array();
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    json col = json::array();
    for (Eigen::Index r = 0; r < v.rows(); ++r) col.push_back(v(r, c));
    cols.push_back(std::move(col));
  }
  return {{"d", v.rows()}, {"n", v.cols()}, {"columns", std::move(cols)}};
}

relproj::SubspaceBasis basis_from_json(const json& j) {
  require(j.is_object() && j.contains("d") && j.contains("n") && j.contains("columns"),
          "basis JSON needs \"d\", \"n\" and \"columns\"");
  const auto d = j["d"].get<long>();
  const auto n = j["n"].get<long>();
  const json& cols = j["columns"];
  require(d >= 1 && n >= 1 && cols.is_array() && static_cast<long>(cols.size()) == n,
          "basis JSON: \"columns\" must hold n columns");
  Matrix v(d, n);
  for (long c = 0; c < n; ++c) {
    require(cols[c].is_array() && static_cast<long>(cols[c].size()) == d,
            "basis JSON: every column must hold d numbers");
    for (long r = 0; r < d; ++r) {
      require(cols[c][r].is_number(), "basis JSON: entries must be numbers");
      v(r, c) = cols[c][r].get<double>();
    }
  }
  return relproj::SubspaceBasis(std::move(v));
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const json& j) {
  require(j.is_array(), "expected a JSON array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_number(), "expected a JSON array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

json search_result_to_json(const search::SearchResult& r) {
  return {{"value", r.value},
          {"S", matrix_to_json(r.S.matrix())},
          {"D", vector_to_json(r.D.values())},
          {"P", matrix_to_json(r.P.matrix())},
          {"n", r.P.rank()},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

search::SearchResult search_result_from_json(const json& j) {
  search::SearchResult r;
  r.value = j.at("value").get<double>();
  r.S = SignMatrix(matrix_from_json(j.at("S")));
  r.D = WeightVector(vector_from_json(j.at("D")));
  r.P = validate_projection(matrix_from_json(j.at("P")), j.at("n").get<int>());
  r.iterations = j.at("iterations").get<int>();
  r.converged = j.at("converged").get<bool>();
  return r;
}

namespace {

json optional_number(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

}  // namespace

json certificate_to_json(const almostmin::Certificate& c) {
  return {{"rho", optional_number(c.rho)},
          {"r", c.r},
          {"R", c.R},
          {"op_norm_l1", c.op_norm_l1},
          {"lower_bound", optional_number(c.lower_bound)},
          {"gap_rows", c.gap_rows},
          {"gap_minimality", optional_number(c.gap_minimality)},
          {"witness", c.witness.empty() ? json(nullptr) : json(c.witness)}};
}

json pipeline_to_json(const almostmin::PipelineResult& r, bool dump_matrices) {
  json out = {{"n", r.n},
              {"d", r.d},
              {"eta", r.eta},
              {"eps", r.eps},
              {"certificate", certificate_to_json(r.cert)},
              {"converged", r.converged},
              {"refinements", r.refinements},
              {"multiplicities", r.weights.p},
              {"q", r.weights.q},
              {"k", r.weights.k},
              {"d_rho", r.d_rho},
              {"abs_sum", r.cert.abs_sum},
              {"display_holds", r.display_holds}};
  if (dump_matrices) {
    if (r.P) out["P"] = matrix_to_json(r.P->matrix());
    if (r.S) out["S"] = matrix_to_json(r.S->matrix());
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

}  // namespace projconst::io
