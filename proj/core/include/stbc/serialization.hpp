#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "stbc/algebra.hpp"
#include "stbc/constructions.hpp"
#include "stbc/numerics.hpp"
#include "stbc/optimality.hpp"
#include "stbc/simulator.hpp"

// JSON mapping for the library types. Complex numbers are [re, im] pairs and
// matrices are arrays of rows. Doubles are written with round-trip precision,
// so load(save(x)) == x bit for bit.

namespace stbc {

using Json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

/// { "n", "group_table": [[int]], "cocycle": [[[re,im]]], "basis_embeddings": [[[re,im]]] }
Json algebra_spec_to_json(const AlgebraSpec& spec);
AlgebraSpec algebra_spec_from_json(const Json& j);

/// { "n", "k", "alpha", "weights": [matrix] }
Json stbc_to_json(const LinearSTBC& code);
LinearSTBC stbc_from_json(const Json& j);

/// Output of `construct`: { "code": id, "algebra": spec?, "stbc": {...} }.
Json catalog_code_to_json(const CatalogCode& code);
CatalogCode catalog_code_from_json(const Json& j);

Json validation_report_to_json(const ValidationReport& report);
Json optimality_report_to_json(const OptimalityReport& report);
Json diversity_report_to_json(const DiversityReport& report);

Json code_spec_to_json(const CodeSpec& spec);
/// Overlays the keys present in `j` onto `base`.
CodeSpec code_spec_from_json(const Json& j, CodeSpec base = {});

Json sim_config_to_json(const SimConfig& cfg);
/// Overlays the keys present in `j` onto `base`.
SimConfig sim_config_from_json(const Json& j, SimConfig base = {});

Json ber_points_to_json(std::span<const BerPoint> points);

/// Header `snr_db,ber,ser,bit_errors,bits,stderr`, one row per point.
void write_ber_csv(std::ostream& out, std::span<const BerPoint> points);

/// Same columns prefixed by `code`, one block of rows per labelled run.
void write_sweep_csv(std::ostream& out,
                     std::span<const std::pair<std::string, std::vector<BerPoint>>> runs);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace stbc
