#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dsbd/boundary.hpp"
#include "dsbd/verify.hpp"

namespace dsbd::cli {

// Malformed input files and bad option combinations; the tool exits with 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CsvTable {
  std::vector<std::vector<std::string>> rows;
  std::vector<int> lines;  // source line of each row, for diagnostics
};

// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF line ends.
CsvTable read_csv(const std::string& text, const std::string& source);

// Numeric rows with exactly `width` fields. A first row that does not parse
// is taken as a header and skipped.
std::vector<std::vector<double>> numeric_rows(const CsvTable& t, std::size_t width,
                                              const std::string& source, std::vector<int>* lines = nullptr);

std::string csv_field(const std::string& s);
std::string csv_number(double v);
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

std::string read_file(const std::string& path);
nlohmann::json parse_json(const std::string& text, const std::string& source);

// Config file keys: d, nu, quad_order, eps_schedule, fit_window, fit_samples,
// tolerances, seed, output_dir. Unknown keys are rejected.
void apply_config(const nlohmann::json& j, RunConfig& cfg, const std::string& source);
nlohmann::ordered_json config_json(const RunConfig& cfg);
nlohmann::ordered_json report_json(const SuiteReport& r);

// [re, im] pairs
CVec complex_array(const nlohmann::json& j, const std::string& what);
nlohmann::ordered_json complex_json(const CVec& v);

// Data file: {d, quad_order, fingerprint, nu?, v_plus, v_minus}. The rule is
// rebuilt from (d, quad_order) and must match the fingerprint.
AsymptoticData read_data(const nlohmann::json& j, const RunConfig& cfg, const std::string& source);
nlohmann::ordered_json data_json(const AsymptoticData& v, const RunConfig& cfg);

}  // namespace dsbd::cli
