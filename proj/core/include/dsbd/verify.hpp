#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dsbd/boundary.hpp"

namespace dsbd {

struct RunConfig {
  int d = 2;
  double nu = 1.0;
  int quad_order = 64;
  std::vector<double> eps_schedule;  // empty: resolved by each rule
  double t_lo = 4.0, t_hi = 6.0;
  int fit_samples = 8;
  std::map<std::string, double> tolerances;  // overrides by check name
  std::uint64_t seed = 1;
  std::string output_dir = ".";

  // Throws ArgumentError on invalid values (d, nu, order, window).
  void validate() const;
  ModelParams params() const { return ModelParams(d, nu); }
  FitOptions fit() const;
  double tol(const std::string& name, double fallback) const;
};

struct CheckRecord {
  std::string name;
  double defect = 0;
  double tol = 0;
  bool pass = false;
  std::vector<std::string> flags;
  double seconds = 0;
};

struct SuiteReport {
  std::string suite;
  RunConfig config;
  std::vector<CheckRecord> checks;
  std::string rho_ordering;
  std::string calibration_evidence;
  std::vector<std::string> notes;  // checks omitted for this configuration, with reasons

  bool pass() const;
};

const std::vector<std::string>& suite_names();  // geometry ... oracle, all

// Runs a named suite; throws ArgumentError for unknown names.
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

// Individual checks, grouped by suite. Each returns a finished record with
// the defect measured against the tolerance (overridable in cfg by name).
// Composite checks report max(part defect / part tolerance) against 1 and list
// the parts in flags.
namespace checks {

// geometry
CheckRecord mink_symmetry(const RunConfig& cfg);
CheckRecord lorentz_preserves_product(const RunConfig& cfg);
CheckRecord point_invariants(const RunConfig& cfg);
CheckRecord chart_identities(const RunConfig& cfg);
CheckRecord sphere_product_identity(const RunConfig& cfg);
CheckRecord boundary_limit_identity(const RunConfig& cfg);
CheckRecord conformal_plane_waves(const RunConfig& cfg);

// identities
CheckRecord gamma_and_constants(const RunConfig& cfg);
CheckRecord branch_rule(const RunConfig& cfg);
CheckRecord rule_mass_and_orthogonality(const RunConfig& cfg);
CheckRecord field_equations(const RunConfig& cfg);
CheckRecord packet_routes_agree(const RunConfig& cfg);
CheckRecord packet_symmetries(const RunConfig& cfg);
CheckRecord delta_identity(const RunConfig& cfg);
CheckRecord smatrix_inversion(const RunConfig& cfg);
CheckRecord smatrix_routes_agree(const RunConfig& cfg);
CheckRecord smatrix_rotation(const RunConfig& cfg);
CheckRecord inv_identity(const RunConfig& cfg);

// propagators
CheckRecord bunch_davies_kernel(const RunConfig& cfg);
CheckRecord kernel_routes_agree(const RunConfig& cfg);
CheckRecord kernel_table_accuracy(const RunConfig& cfg);
CheckRecord sphere_kernel_relation(const RunConfig& cfg);
CheckRecord causal_antisymmetry(const RunConfig& cfg);

// boundary
CheckRecord ordering_calibration(const RunConfig& cfg, OrderingCalibration* out = nullptr);
CheckRecord plane_wave_asymptotics(const RunConfig& cfg);
CheckRecord plane_wave_data_dual(const RunConfig& cfg);
CheckRecord round_trip(const RunConfig& cfg);
CheckRecord bunch_davies_data(const RunConfig& cfg);
CheckRecord symplectic_identity(const RunConfig& cfg);
CheckRecord fit_window_convergence(const RunConfig& cfg);

// oracle
CheckRecord mode_oracle(const RunConfig& cfg);
CheckRecord mode_integrator(const RunConfig& cfg);

}  // namespace checks

// Helper used by the checks: times fn, fills seconds/pass.
CheckRecord make_record(const std::string& name, double tol,
                        const std::function<double(std::vector<std::string>&)>& fn);

}  // namespace dsbd
