#include "cli_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "dsbd/quadrature.hpp"

namespace dsbd::cli {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

CsvTable read_csv(const std::string& text, const std::string& source) {
  CsvTable t;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, in_row = false, after_quote = false;
  int line = 1, row_line = 1;
  auto end_field = [&] {
    row.push_back(field);
    field.clear();
    after_quote = false;
  };
  auto end_row = [&] {
    end_field();
    // blank lines carry no row
    if (!(row.size() == 1 && row[0].empty())) {
      t.rows.push_back(row);
      t.lines.push_back(row_line);
    }
    row.clear();
    in_row = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (!in_row) {
      in_row = true;
      row_line = line;
    }
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (ch == '\n') ++line;
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      if (!field.empty() || after_quote)
        throw InputError(source + ":" + std::to_string(line) + ": stray quote inside a field");
      quoted = true;
    } else if (ch == ',') {
      end_field();
    } else if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (ch == '\n') {
      end_row();
      ++line;
    } else {
      if (after_quote)
        throw InputError(source + ":" + std::to_string(line) + ": text after closing quote");
      field += ch;
    }
  }
  if (quoted) throw InputError(source + ":" + std::to_string(row_line) + ": unterminated quoted field");
  if (in_row) end_row();
  return t;
}

namespace {

bool parse_double(std::string s, double& v) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return false;
  s = s.substr(b, e - b + 1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::vector<std::vector<double>> numeric_rows(const CsvTable& t, std::size_t width,
                                              const std::string& source, std::vector<int>* lines) {
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    std::vector<double> vals(row.size());
    bool ok = true;
    for (std::size_t k = 0; k < row.size() && ok; ++k) ok = parse_double(row[k], vals[k]);
    if (!ok && r == 0) continue;  // header
    std::string where = source + ":" + std::to_string(t.lines[r]) + ": ";
    if (!ok) throw InputError(where + "non-numeric field");
    if (row.size() != width)
      throw InputError(where + "expected " + std::to_string(width) + " fields, got " +
                       std::to_string(row.size()));
    out.push_back(std::move(vals));
    if (lines) lines->push_back(t.lines[r]);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) os << (k ? "," : "") << csv_field(fields[k]);
  os << "\r\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

namespace {

template <class T>
T get(const json& j, const char* key, const std::string& source) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(source + ": key '" + key + "': " + e.what());
  }
}

}  // namespace

void apply_config(const json& j, RunConfig& cfg, const std::string& source) {
  if (!j.is_object()) throw InputError(source + ": config must be a JSON object");
  static const std::set<std::string> keys{"d",           "nu",         "quad_order", "eps_schedule",
                                          "fit_window",  "fit_samples", "tolerances", "seed",
                                          "output_dir"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!keys.count(it.key())) throw InputError(source + ": unknown key '" + it.key() + "'");
  if (j.contains("d")) cfg.d = get<int>(j, "d", source);
  if (j.contains("nu")) cfg.nu = get<double>(j, "nu", source);
  if (j.contains("quad_order")) cfg.quad_order = get<int>(j, "quad_order", source);
  if (j.contains("eps_schedule")) cfg.eps_schedule = get<std::vector<double>>(j, "eps_schedule", source);
  if (j.contains("fit_window")) {
    auto w = get<std::vector<double>>(j, "fit_window", source);
    if (w.size() != 2) throw InputError(source + ": fit_window must be [t_lo, t_hi]");
    cfg.t_lo = w[0];
    cfg.t_hi = w[1];
  }
  if (j.contains("fit_samples")) cfg.fit_samples = get<int>(j, "fit_samples", source);
  if (j.contains("tolerances"))
    cfg.tolerances = get<std::map<std::string, double>>(j, "tolerances", source);
  if (j.contains("seed")) cfg.seed = get<std::uint64_t>(j, "seed", source);
  if (j.contains("output_dir")) cfg.output_dir = get<std::string>(j, "output_dir", source);
}

ojson config_json(const RunConfig& cfg) {
  return ojson{{"d", cfg.d},
               {"nu", cfg.nu},
               {"quad_order", cfg.quad_order},
               {"eps_schedule", cfg.eps_schedule},
               {"fit_window", {cfg.t_lo, cfg.t_hi}},
               {"fit_samples", cfg.fit_samples},
               {"tolerances", cfg.tolerances},
               {"seed", cfg.seed},
               {"output_dir", cfg.output_dir}};
}

ojson report_json(const SuiteReport& r) {
  ojson checks = ojson::array();
  for (const CheckRecord& c : r.checks) {
    // non-finite defects (a check that threw) are written as null
    ojson defect = std::isfinite(c.defect) ? ojson(c.defect) : ojson(nullptr);
    checks.push_back({{"name", c.name},
                      {"defect", defect},
                      {"tol", c.tol},
                      {"pass", c.pass},
                      {"flags", c.flags},
                      {"seconds", c.seconds}});
  }
  return ojson{{"suite", r.suite},
               {"config", config_json(r.config)},
               {"checks", checks},
               {"calibration", {{"rho_ordering", r.rho_ordering}, {"evidence", r.calibration_evidence}}},
               {"notes", r.notes},
               {"pass", r.pass()}};
}

CVec complex_array(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array of [re, im] pairs");
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const json& e = j[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw InputError(what + "[" + std::to_string(k) + "]: expected [re, im]");
    v[static_cast<Eigen::Index>(k)] = cplx(e[0].get<double>(), e[1].get<double>());
  }
  return v;
}

ojson complex_json(const CVec& v) {
  ojson out = ojson::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back({v[k].real(), v[k].imag()});
  return out;
}

AsymptoticData read_data(const json& j, const RunConfig& cfg, const std::string& source) {
  if (!j.is_object()) throw InputError(source + ": data must be a JSON object");
  int d = get<int>(j, "d", source);
  int order = get<int>(j, "quad_order", source);
  auto fp = get<std::string>(j, "fingerprint", source);
  if (d != cfg.d)
    throw InputError(source + ": data has d = " + std::to_string(d) + ", run has d = " +
                     std::to_string(cfg.d));
  if (j.contains("nu") && get<double>(j, "nu", source) != cfg.nu)
    throw InputError(source + ": data nu differs from the run nu");
  RulePtr rule;
  try {
    rule = sphere_rule(d, order);
  } catch (const Error& e) {
    throw InputError(source + ": " + e.what());
  }
  if (rule_fingerprint(*rule) != fp)
    throw InputError(source + ": fingerprint does not match the rule (d = " + std::to_string(d) +
                     ", quad_order = " + std::to_string(order) + ")");
  CVec vp = complex_array(j.contains("v_plus") ? j["v_plus"] : json(), source + ": v_plus");
  CVec vm = complex_array(j.contains("v_minus") ? j["v_minus"] : json(), source + ": v_minus");
  auto n = static_cast<Eigen::Index>(rule->size());
  if (vp.size() != n || vm.size() != n)
    throw InputError(source + ": expected " + std::to_string(n) + " values per component");
  return AsymptoticData(BoundaryFunction(rule, vp), BoundaryFunction(rule, vm));
}

ojson data_json(const AsymptoticData& v, const RunConfig& cfg) {
  const SphereRule& r = *v.v_plus.rule;
  return ojson{{"d", r.d},
               {"quad_order", r.order},
               {"nu", cfg.nu},
               {"fingerprint", rule_fingerprint(r)},
               {"v_plus", complex_json(v.v_plus.values)},
               {"v_minus", complex_json(v.v_minus.values)}};
}

}  // namespace dsbd::cli
