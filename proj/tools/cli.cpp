#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include "CLI11.hpp"
#include "cli_io.hpp"
#include "dsbd/boundary.hpp"
#include "dsbd/propagators.hpp"
#include "dsbd/special.hpp"
#include "dsbd/verify.hpp"

namespace dsbd::cli {

using nlohmann::json;

namespace {

struct Overrides {
  std::string config;
  std::string out = "-";
  std::optional<int> d, quad_order;
  std::optional<double> nu;
};

RunConfig load_config(const Overrides& o) {
  RunConfig cfg;
  if (!o.config.empty()) apply_config(parse_json(read_file(o.config), o.config), cfg, o.config);
  if (o.d) cfg.d = *o.d;
  if (o.nu) cfg.nu = *o.nu;
  if (o.quad_order) cfg.quad_order = *o.quad_order;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  return cfg;
}

// Writes CSV to a file, or to `out` for "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) {
    if (path == "-") {
      os_ = &out;
    } else {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError(path + ": cannot write");
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void append(std::vector<std::string>& row, cplx v) {
  row.push_back(csv_number(v.real()));
  row.push_back(csv_number(v.imag()));
}

std::string error_flag(const std::exception& e) { return std::string("error: ") + e.what(); }

int cmd_verify(const Overrides& o, const std::string& suite, std::ostream& out) {
  RunConfig cfg = load_config(o);
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw InputError("unknown suite '" + suite + "'");
  SuiteReport r = run_suite(suite, cfg);
  std::string path = o.out != "-" ? o.out : (std::filesystem::path(cfg.output_dir) / ("report_" + suite + ".json")).string();
  std::ofstream f(path);
  if (!f) throw InputError(path + ": cannot write");
  f << report_json(r).dump(2) << "\n";
  for (const CheckRecord& c : r.checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %-28s defect %.3e tol %.1e (%.2f s)", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.defect, c.tol, c.seconds);
    out << buf << "\n";
  }
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  out << "ordering: " << r.rho_ordering << "\n";
  out << "report: " << path << "\n";
  return r.pass() ? 0 : 1;
}

int cmd_reconstruct(const Overrides& o, const std::string& data_path, const std::string& points_path,
                    std::ostream& out) {
  RunConfig cfg = load_config(o);
  AsymptoticData v = read_data(parse_json(read_file(data_path), data_path), cfg, data_path);
  auto pts = numeric_rows(read_csv(read_file(points_path), points_path), cfg.d + 1, points_path);
  ModelParams p = cfg.params();
  Reconstruction u(v, p);
  Sink sink(o.out, out);
  std::vector<std::string> head{"t"};
  for (int k = 1; k <= cfg.d; ++k) head.push_back("omega_" + std::to_string(k));
  for (const char* h : {"u_re", "u_im", "error", "flag"}) head.push_back(h);
  write_csv_row(*sink, head);
  for (const auto& row : pts) {
    std::vector<std::string> fields;
    for (double x : row) fields.push_back(csv_number(x));
    Vec w = Eigen::Map<const Vec>(row.data() + 1, cfg.d);
    std::string flag = "ok";
    PacketValue pv{cplx(NAN, NAN), NAN, false};
    try {
      if (!std::isfinite(row[0]) || std::abs(w.norm() - 1) > 1e-8)
        throw DomainError("direction is not a unit vector");
      pv = u.evaluate(ds_chart(row[0], w / w.norm()));
      if (!pv.monotone) flag = "unresolved";
    } catch (const std::exception& e) {
      flag = error_flag(e);
    }
    append(fields, pv.value);
    fields.push_back(csv_number(pv.error));
    fields.push_back(flag);
    write_csv_row(*sink, fields);
  }
  return 0;
}

int cmd_twopoint(const Overrides& o, const std::string& pairs_path, const std::string& sign_s,
                 const std::string& space, std::ostream& out) {
  RunConfig cfg = load_config(o);
  int n = cfg.d + 1;
  auto rows = numeric_rows(read_csv(read_file(pairs_path), pairs_path), 2 * n, pairs_path);
  ModelParams p = cfg.params();
  Sign sign = sign_s == "+" ? Sign::PLUS : Sign::MINUS;
  Sink sink(o.out, out);
  std::vector<std::string> head;
  for (const char* s : {"x", "y"})
    for (int k = 0; k < n; ++k) head.push_back(std::string(s) + "_" + std::to_string(k));
  for (const char* h : {"x_dot_y", "re", "im", "flag"}) head.push_back(h);
  write_csv_row(*sink, head);
  for (const auto& row : rows) {
    std::vector<std::string> fields;
    for (double x : row) fields.push_back(csv_number(x));
    Vec xc = Eigen::Map<const Vec>(row.data(), n), yc = Eigen::Map<const Vec>(row.data() + n, n);
    double dot = mink_dot(xc, yc);
    std::string flag = "ok";
    cplx val(NAN, NAN);
    try {
      Point x = make_point(xc), y = make_point(yc);
      KernelValue kv;
      if (space == "ds") {
        auto on_ds = [](const Point& q) { return std::abs(q.xx + 1) <= 1e-10 * q.rho * q.rho; };
        if (!on_ds(x) || !on_ds(y)) throw DomainError("point not on dS (x.x = -1 required)");
        kv = lambda_ds(x, y, sign, p);
      } else {
        kv = lambda_sphere(x, y, sign, p);
      }
      val = kv.value;
      if (!kv.monotone) flag = "unresolved";
    } catch (const std::exception& e) {
      flag = error_flag(e);
    }
    fields.push_back(csv_number(dot));
    append(fields, val);
    fields.push_back(flag);
    write_csv_row(*sink, fields);
  }
  return 0;
}

BoundaryFunction read_profile(const json& j, RulePtr rule, const std::string& source) {
  if (j.is_array()) {
    BoundaryFunction v = BoundaryFunction::zero(rule);
    for (std::size_t k = 0; k < j.size(); ++k) {
      std::string where = source + ": profile[" + std::to_string(k) + "]";
      const json& t = j[k];
      try {
        int l = t.at("l").get<int>();
        auto ax = t.at("axis").get<std::vector<double>>();
        cplx coef = t.contains("coef") ? complex_array(json::array({t["coef"]}), where)[0] : cplx(1);
        if (l < 0 || static_cast<int>(ax.size()) != rule->d)
          throw InputError(where + ": need l >= 0 and an axis of length d");
        Vec a = Eigen::Map<const Vec>(ax.data(), rule->d);
        if (a.norm() == 0) throw InputError(where + ": zero axis");
        v = v + zonal_basis(l, make_direction(a / a.norm()), rule) * coef;
      } catch (const json::exception& e) {
        throw InputError(where + ": " + e.what());
      }
    }
    return v;
  }
  if (j.is_object()) {
    if (!j.contains("fingerprint") || j["fingerprint"] != rule_fingerprint(*rule))
      throw InputError(source + ": profile fingerprint does not match the rule of the run");
    CVec vals = complex_array(j.contains("values") ? j["values"] : json(), source + ": values");
    if (vals.size() != static_cast<Eigen::Index>(rule->size()))
      throw InputError(source + ": expected " + std::to_string(rule->size()) + " profile values");
    return BoundaryFunction(rule, vals);
  }
  throw InputError(source + ": profile must be a list of zonal terms or {fingerprint, values}");
}

int cmd_asymptotics(const Overrides& o, const std::string& spec_path, const std::string& data_out,
                    std::ostream& out) {
  RunConfig cfg = load_config(o);
  json spec = parse_json(read_file(spec_path), spec_path);
  if (!spec.is_object()) throw InputError(spec_path + ": spec must be a JSON object");
  std::string sign_s = spec.value("sign", "+"), expo = spec.value("exponent", "plus");
  if (sign_s != "+" && sign_s != "-") throw InputError(spec_path + ": sign must be \"+\" or \"-\"");
  if (expo != "plus" && expo != "minus") throw InputError(spec_path + ": exponent must be plus or minus");
  if (!spec.contains("profile")) throw InputError(spec_path + ": missing profile");
  ModelParams p = cfg.params();
  RulePtr rule = sphere_rule(p, cfg.quad_order);
  BoundaryFunction psi = read_profile(spec["profile"], rule, spec_path);
  Sign sign = sign_s == "+" ? Sign::PLUS : Sign::MINUS;
  bool plus = expo == "plus";
  WavePacket u(psi, sign, plus ? p.lam_plus() : p.lam_minus(), p);

  // per-node fits, so that each row carries its own residual and condition
  FitOptions fo = cfg.fit();
  std::vector<double> ts;
  std::vector<CVec> slices;
  for (int k = 0; k < fo.n_samples; ++k) {
    ts.push_back(fo.t_lo + (fo.t_hi - fo.t_lo) * k / (fo.n_samples - 1));
    slices.push_back(u.on_ds_slice(ts.back(), rule->xi));
  }
  auto n = static_cast<Eigen::Index>(rule->size());
  std::vector<FitResult> fits(rule->size());
  FAsymptotics f{BoundaryFunction::zero(rule), BoundaryFunction::zero(rule)};
  std::vector<cplx> vals(ts.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < ts.size(); ++k) vals[k] = slices[k][j];
    fits[j] = fit_f_asymptotics(ts, vals, p, fo.corrections, fo.cond_limit);
    f.w_plus.values[j] = fits[j].w_plus;
    f.w_minus.values[j] = fits[j].w_minus;
  }
  AsymptoticData v = rho_from_f(f, p);

  // predicted data of the packet
  BoundaryFunction zero = BoundaryFunction::zero(rule), comp;
  if (plus) {
    comp = psi * a_of_nu(p);
  } else {
    comp = smatrix_apply(psi, SDirection::INVERSE, p) * (a_of_minus_nu(p) * std::exp(sgn(sign) * p.nu * std::numbers::pi));
  }
  AsymptoticData want = sign == Sign::PLUS ? AsymptoticData(comp, zero) : AsymptoticData(zero, comp);
  double scale = std::max(comp.values.cwiseAbs().maxCoeff(), 1e-300);

  Sink sink(o.out, out);
  std::vector<std::string> head;
  for (int k = 1; k <= cfg.d; ++k) head.push_back("xi_" + std::to_string(k));
  for (const char* h : {"w_plus_re", "w_plus_im", "w_minus_re", "w_minus_im", "v_plus_re", "v_plus_im",
                        "v_minus_re", "v_minus_im", "pred_v_plus_re", "pred_v_plus_im", "pred_v_minus_re",
                        "pred_v_minus_im", "fit_residual", "fit_condition", "defect", "flag"})
    head.push_back(h);
  write_csv_row(*sink, head);
  for (Eigen::Index j = 0; j < n; ++j) {
    std::vector<std::string> row;
    for (int k = 0; k < cfg.d; ++k) row.push_back(csv_number(rule->xi(k, j)));
    append(row, f.w_plus.values[j]);
    append(row, f.w_minus.values[j]);
    append(row, v.v_plus.values[j]);
    append(row, v.v_minus.values[j]);
    append(row, want.v_plus.values[j]);
    append(row, want.v_minus.values[j]);
    row.push_back(csv_number(fits[j].residual));
    row.push_back(csv_number(fits[j].condition));
    double defect = (std::abs(v.v_plus.values[j] - want.v_plus.values[j]) +
                     std::abs(v.v_minus.values[j] - want.v_minus.values[j])) / scale;
    row.push_back(csv_number(defect));
    row.push_back(fits[j].ill_conditioned ? "ill_conditioned" : "ok");
    write_csv_row(*sink, row);
  }
  if (!data_out.empty()) {
    std::ofstream df(data_out);
    if (!df) throw InputError(data_out + ": cannot write");
    df << data_json(v, cfg).dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dS boundary-data toolkit: verification suites, reconstruction, two-point kernels"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--config", o.config, "JSON run configuration");
  app.add_option("--out", o.out, "output file ('-' for stdout)");
  app.add_option("--d", o.d, "dimension d of de Sitter space (2 or 3)");
  app.add_option("--nu", o.nu, "mass parameter nu (nonzero)");
  app.add_option("--quad-order", o.quad_order, "boundary quadrature order");
  app.fallthrough();

  std::string suite = "all", data, points, pairs, sign = "+", space = "ds", spec, data_out;
  auto* verify = app.add_subcommand("verify", "run a verification suite and write a JSON report");
  verify->add_option("--suite", suite, "suite name (geometry, identities, propagators, boundary, oracle, all)");
  auto* recon = app.add_subcommand("reconstruct", "evaluate the solution with given boundary data");
  recon->add_option("--data", data, "data JSON")->required();
  recon->add_option("--points", points, "CSV rows t, omega_1..omega_d")->required();
  auto* two = app.add_subcommand("twopoint", "evaluate the two-point kernel on pairs");
  two->add_option("--pairs", pairs, "CSV rows x_0..x_d, y_0..y_d")->required();
  two->add_option("--sign", sign, "+ or -")->check(CLI::IsMember({"+", "-"}));
  two->add_option("--space", space, "ds or sphere")->check(CLI::IsMember({"ds", "sphere"}));
  auto* asym = app.add_subcommand("asymptotics", "fit the late-time asymptotics of a wave packet");
  asym->add_option("--spec", spec, "packet spec JSON")->required();
  asym->add_option("--data-out", data_out, "also write the extracted data JSON");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "dsbd: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*verify) return cmd_verify(o, suite, out);
    if (*recon) return cmd_reconstruct(o, data, points, out);
    if (*two) return cmd_twopoint(o, pairs, sign, space, out);
    return cmd_asymptotics(o, spec, data_out, out);
  } catch (const InputError& e) {
    err << "dsbd: " << e.what() << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    err << "dsbd: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "dsbd: internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dsbd::cli
