#include "stbc/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace stbc {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

template <typename T>
SquareTable<T> table_from_json(const Json& j, std::size_t n, const char* key,
                               T (*convert)(const Json&)) {
  if (!j.is_array() || j.size() != n) {
    throw FormatError(std::string("'") + key + "' must be an n x n array");
  }
  std::vector<T> data;
  data.reserve(n * n);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n) {
      throw FormatError(std::string("'") + key + "' must be an n x n array");
    }
    for (const auto& v : row) data.push_back(convert(v));
  }
  return {n, std::move(data)};
}

std::size_t index_from_json(const Json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw FormatError("group table entries must be non-negative integers");
  }
  return j.get<std::size_t>();
}

template <typename T, typename F>
Json table_to_json(const SquareTable<T>& t, F convert) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < t.n(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < t.n(); ++c) row.push_back(convert(t(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void write_ber_row(std::ostream& out, const BerPoint& p) {
  out << format_double("%.6g", p.snr_db) << ',' << format_double("%.9e", p.ber) << ','
      << format_double("%.9e", p.ser) << ',' << p.bit_errors << ',' << p.bits << ','
      << format_double("%.9e", p.std_error) << '\n';
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("complex numbers must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j[0].size();
  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) throw FormatError("matrix rows must have equal length");
    for (const auto& v : row) entries.push_back(complex_from_json(v));
  }
  return {rows, cols, std::move(entries)};
}

Json algebra_spec_to_json(const AlgebraSpec& spec) {
  return {
      {"n", spec.n},
      {"group_table", table_to_json(spec.group_table, [](std::size_t v) { return Json(v); })},
      {"cocycle", table_to_json(spec.cocycle, complex_to_json)},
      {"basis_embeddings", table_to_json(spec.basis_embeddings, complex_to_json)},
  };
}

AlgebraSpec algebra_spec_from_json(const Json& j) {
  AlgebraSpec spec;
  spec.n = index_from_json(require(j, "n"));
  spec.group_table = table_from_json<std::size_t>(require(j, "group_table"), spec.n,
                                                  "group_table", index_from_json);
  spec.cocycle = table_from_json<Complex>(require(j, "cocycle"), spec.n, "cocycle",
                                          complex_from_json);
  spec.basis_embeddings = table_from_json<Complex>(require(j, "basis_embeddings"), spec.n,
                                                   "basis_embeddings", complex_from_json);
  return spec;
}

Json stbc_to_json(const LinearSTBC& code) {
  Json weights = Json::array();
  for (const auto& w : code.weights()) weights.push_back(matrix_to_json(w));
  return {{"n", code.n()}, {"k", code.k()}, {"alpha", code.alpha()}, {"weights", weights}};
}

LinearSTBC stbc_from_json(const Json& j) {
  const auto n = index_from_json(require(j, "n"));
  const double alpha = require(j, "alpha").get<double>();
  std::vector<CMatrix> weights;
  for (const auto& w : require(j, "weights")) weights.push_back(matrix_from_json(w));
  if (j.contains("k") && index_from_json(j.at("k")) != weights.size()) {
    throw FormatError("'k' does not match the number of weight matrices");
  }
  try {
    return {n, alpha, std::move(weights)};
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Json catalog_code_to_json(const CatalogCode& code) {
  Json j = {{"code", code.id}, {"stbc", stbc_to_json(code.code)}};
  j["algebra"] = code.spec ? algebra_spec_to_json(*code.spec) : Json(nullptr);
  return j;
}

CatalogCode catalog_code_from_json(const Json& j) {
  CatalogCode out;
  out.id = j.value("code", std::string("custom"));
  out.code = stbc_from_json(require(j, "stbc"));
  if (j.contains("algebra") && !j.at("algebra").is_null()) {
    out.spec = algebra_spec_from_json(j.at("algebra"));
  }
  return out;
}

Json validation_report_to_json(const ValidationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}, {"residual", v.residual}});
  }
  return {{"valid", report.valid()},
          {"cocycle_residual", report.cocycle_residual},
          {"violations", violations}};
}

Json optimality_report_to_json(const OptimalityReport& r) {
  Json j = {
      {"tolerance", r.tolerance},
      {"unitary_residuals", r.unitary_residuals},
      {"max_unitary_residual", r.max_unitary_residual},
      {"trace_orthogonality_residual", r.trace_orthogonality_residual},
      {"verdicts",
       {{"scaled_unitary", r.unitary_pass}, {"trace_orthogonal", r.trace_orthogonality_pass}}},
  };
  j["phi_residual"] = r.phi_residual ? Json(*r.phi_residual) : Json(nullptr);
  j["cocycle_modulus_residual"] = r.cocycle_modulus_residual ? Json(*r.cocycle_modulus_residual) : Json(nullptr);
  j["basis_orthogonality_residual"] =
      r.basis_orthogonality_residual ? Json(*r.basis_orthogonality_residual) : Json(nullptr);
  if (r.phi_pass) j["verdicts"]["phi"] = *r.phi_pass;
  if (r.algebra_conditions_pass) j["verdicts"]["algebra_conditions"] = *r.algebra_conditions_pass;
  j["verdicts"]["unitary_trace_orthogonal"] = r.unitary_trace_orthogonal_pass();
  j["verdicts"]["all"] = r.all_pass();
  return j;
}

Json diversity_report_to_json(const DiversityReport& r) {
  Json argmin = Json::array();
  for (Complex z : r.argmin) argmin.push_back(complex_to_json(z));
  return {{"min_det_modulus", r.min_det_modulus},
          {"argmin", argmin},
          {"pairs_examined", r.pairs_examined}};
}

Json code_spec_to_json(const CodeSpec& spec) {
  return {
      {"id", spec.id},
      {"n", spec.n},
      {"t", complex_to_json(spec.cyclic.t)},
      {"delta", complex_to_json(spec.cyclic.delta)},
      {"x", complex_to_json(spec.biquadratic.x)},
      {"y", complex_to_json(spec.biquadratic.y)},
      {"delta1", complex_to_json(spec.biquadratic.delta1)},
      {"delta2", complex_to_json(spec.biquadratic.delta2)},
  };
}

CodeSpec code_spec_from_json(const Json& j, CodeSpec base) {
  if (j.is_string()) {
    base.id = j.get<std::string>();
    return base;
  }
  if (!j.is_object()) throw FormatError("code must be an id string or an object");
  if (j.contains("id")) base.id = j.at("id").get<std::string>();
  if (j.contains("n")) base.n = index_from_json(j.at("n"));
  if (j.contains("t")) base.cyclic.t = complex_from_json(j.at("t"));
  if (j.contains("delta")) base.cyclic.delta = complex_from_json(j.at("delta"));
  if (j.contains("x")) base.biquadratic.x = complex_from_json(j.at("x"));
  if (j.contains("y")) base.biquadratic.y = complex_from_json(j.at("y"));
  if (j.contains("delta1")) base.biquadratic.delta1 = complex_from_json(j.at("delta1"));
  if (j.contains("delta2")) base.biquadratic.delta2 = complex_from_json(j.at("delta2"));
  return base;
}

Json sim_config_to_json(const SimConfig& cfg) {
  return {
      {"code", code_spec_to_json(cfg.code)},
      {"m", cfg.m},
      {"constellation", cfg.constellation},
      {"snr_grid_db", cfg.snr_grid_db},
      {"trials_per_point", cfg.trials_per_point},
      {"seed", cfg.seed},
      {"slope_fit_points", cfg.slope_fit_points},
      {"slope_min_errors", cfg.slope_min_errors},
  };
}

SimConfig sim_config_from_json(const Json& j, SimConfig base) {
  if (!j.is_object()) throw FormatError("simulation config must be a JSON object");
  try {
    if (j.contains("code")) base.code = code_spec_from_json(j.at("code"), base.code);
    if (j.contains("m")) base.m = j.at("m").get<std::size_t>();
    if (j.contains("constellation")) base.constellation = j.at("constellation").get<std::string>();
    if (j.contains("snr_grid_db")) base.snr_grid_db = j.at("snr_grid_db").get<std::vector<double>>();
    if (j.contains("trials_per_point")) base.trials_per_point = j.at("trials_per_point").get<std::uint64_t>();
    if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("slope_fit_points")) base.slope_fit_points = j.at("slope_fit_points").get<std::size_t>();
    if (j.contains("slope_min_errors")) base.slope_min_errors = j.at("slope_min_errors").get<std::uint64_t>();
    if (j.contains("threads")) base.threads = j.at("threads").get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("simulation config: ") + e.what());
  }
  return base;
}

Json ber_points_to_json(std::span<const BerPoint> points) {
  Json arr = Json::array();
  for (const auto& p : points) {
    arr.push_back({{"snr_db", p.snr_db},
                   {"ber", p.ber},
                   {"ser", p.ser},
                   {"bit_errors", p.bit_errors},
                   {"bits", p.bits},
                   {"symbol_errors", p.symbol_errors},
                   {"symbols", p.symbols},
                   {"stderr", p.std_error}});
  }
  return arr;
}

void write_ber_csv(std::ostream& out, std::span<const BerPoint> points) {
  out << "snr_db,ber,ser,bit_errors,bits,stderr\n";
  for (const auto& p : points) write_ber_row(out, p);
}

void write_sweep_csv(std::ostream& out,
                     std::span<const std::pair<std::string, std::vector<BerPoint>>> runs) {
  out << "code,snr_db,ber,ser,bit_errors,bits,stderr\n";
  for (const auto& [label, points] : runs) {
    for (const auto& p : points) {
      out << label << ',';
      write_ber_row(out, p);
    }
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace stbc
