#include "dsbd/verify.hpp"

#include "verify_util.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace dsbd {

void RunConfig::validate() const {
  if (d != 2 && d != 3) throw ArgumentError("config: d must be 2 or 3");
  if (!std::isfinite(nu) || nu == 0.0) throw ArgumentError("config: nu must be finite and nonzero");
  if (quad_order < 8) throw ArgumentError("config: quad_order must be at least 8");
  if (!(t_lo < t_hi)) throw ArgumentError("config: fit window needs t_lo < t_hi");
  if (fit_samples < 4) throw ArgumentError("config: fit_samples must be at least 4");
  for (double e : eps_schedule)
    if (!(e > 0)) throw ArgumentError("config: eps_schedule entries must be positive");
  if (!eps_schedule.empty() && eps_schedule.size() < 3)
    throw ArgumentError("config: eps_schedule needs at least 3 entries");
  for (const auto& [k, v] : tolerances)
    if (!(v > 0)) throw ArgumentError("config: tolerance for " + k + " must be positive");
}

FitOptions RunConfig::fit() const {
  FitOptions f;
  f.t_lo = t_lo;
  f.t_hi = t_hi;
  f.n_samples = fit_samples;
  return f;
}

double RunConfig::tol(const std::string& name, double fallback) const {
  auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

bool SuiteReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

CheckRecord make_record(const std::string& name, double tol,
                        const std::function<double(std::vector<std::string>&)>& fn) {
  CheckRecord r;
  r.name = name;
  r.tol = tol;
  auto t0 = std::chrono::steady_clock::now();
  try {
    r.defect = fn(r.flags);
    r.pass = std::isfinite(r.defect) && r.defect < tol;
  } catch (const std::exception& e) {
    r.defect = std::numeric_limits<double>::infinity();
    r.pass = false;
    r.flags.push_back(std::string("error: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

const TwoPointTable& detail::shared_table(const ModelParams& p) {
  static std::mutex m;
  static std::map<std::pair<int, double>, std::unique_ptr<TwoPointTable>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = cache[{p.d, p.nu_re()}];
  if (!slot) slot = std::make_unique<TwoPointTable>(p);
  return *slot;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"geometry", "identities", "propagators",
                                              "boundary", "oracle",     "all"};
  return names;
}

namespace {

void run_geometry(const RunConfig& c, SuiteReport& r) {
  using namespace checks;
  for (auto* fn : {mink_symmetry, lorentz_preserves_product, point_invariants, chart_identities,
                   sphere_product_identity, boundary_limit_identity, conformal_plane_waves})
    r.checks.push_back(fn(c));
}

void run_identities(const RunConfig& c, SuiteReport& r) {
  using namespace checks;
  for (auto* fn : {gamma_and_constants, branch_rule, rule_mass_and_orthogonality, field_equations,
                   packet_routes_agree, packet_symmetries, delta_identity, smatrix_inversion, smatrix_routes_agree,
                   smatrix_rotation, inv_identity})
    r.checks.push_back(fn(c));
}

void run_propagators(const RunConfig& c, SuiteReport& r) {
  using namespace checks;
  r.checks.push_back(bunch_davies_kernel(c));
  r.checks.push_back(kernel_routes_agree(c));
  r.checks.push_back(causal_antisymmetry(c));
  r.checks.push_back(sphere_kernel_relation(c));
  if (c.d == 2)
    r.checks.push_back(kernel_table_accuracy(c));
  else
    r.notes.push_back("kernel_table_accuracy: the interpolation table is built for d = 2 only");
}

void run_boundary(const RunConfig& c, SuiteReport& r) {
  using namespace checks;
  OrderingCalibration cal;
  r.checks.push_back(ordering_calibration(c, &cal));
  r.rho_ordering = to_string(cal.chosen);
  r.calibration_evidence = cal.evidence;
  for (auto* fn : {plane_wave_asymptotics, plane_wave_data_dual, round_trip, fit_window_convergence})
    r.checks.push_back(fn(c));
  if (c.d == 2) {
    r.checks.push_back(bunch_davies_data(c));
    r.checks.push_back(symplectic_identity(c));
  } else {
    r.notes.push_back(
        "bunch_davies_data, symplectic_identity: need the kernel table, built for d = 2 only");
  }
}

void run_oracle(const RunConfig& c, SuiteReport& r) {
  r.checks.push_back(checks::mode_oracle(c));
  r.checks.push_back(checks::mode_integrator(c));
}

}  // namespace

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  bool known = false;
  for (const auto& n : suite_names()) known = known || n == name;
  if (!known) throw ArgumentError("unknown suite: " + name);
  cfg.validate();
  SuiteReport r;
  r.suite = name;
  r.config = cfg;
  r.rho_ordering = to_string(kDefaultOrdering);
  bool all = name == "all";
  if (all || name == "geometry") run_geometry(cfg, r);
  if (all || name == "identities") run_identities(cfg, r);
  if (all || name == "propagators") run_propagators(cfg, r);
  if (all || name == "boundary") run_boundary(cfg, r);
  if (all || name == "oracle") run_oracle(cfg, r);
  return r;
}

}  // namespace dsbd
