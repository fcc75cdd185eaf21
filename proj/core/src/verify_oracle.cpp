#include <cmath>

#include "dsbd/modes.hpp"
#include "dsbd/verify.hpp"
#include "verify_util.hpp"

namespace dsbd::checks {

using detail::Parts;

namespace {

// Solve the mode ODE from (t0, h(t0), h'(t0)) with a four-point central
// difference for h', and compare with h at the grid points.
double mode_agreement(const std::function<cplx(double)>& h, int l, const ModelParams& p, double t0) {
  const double e = 1e-3;
  cplx h0 = h(t0);
  cplx dh = (8.0 * (h(t0 + e) - h(t0 - e)) - (h(t0 + 2 * e) - h(t0 - 2 * e))) / (12 * e);
  std::vector<double> grid{-2.0, -1.0, 1.0, 2.0};
  ModeSolution ms = mode_solve(l, p, t0, h0, dh, grid);
  double worst = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    cplx want = h(grid[i]);
    worst = std::max(worst, std::abs(ms.values[i] - want) / std::abs(want));
  }
  return worst;
}

}  // namespace

CheckRecord mode_oracle(const RunConfig& cfg) {
  return make_record("mode_oracle", cfg.tol("mode_oracle", 1.0), [&](auto& flags) {
    ModelParams p = cfg.params();
    RulePtr rule = sphere_rule(p, std::max(cfg.quad_order, 16));
    Vec ax = Vec::Unit(cfg.d, 0);
    BoundaryDirection axd = make_direction(ax);
    BoundaryFunction v = zonal_basis(0, axd, rule) + zonal_basis(1, axd, rule) +
                         zonal_basis(2, axd, rule) * cplx(0.4, 0.3);
    Parts parts;
    double packet = 0;
    for (Sign s : {Sign::PLUS, Sign::MINUS}) {
      SliceFn sl = slice_of(WavePacket(v, s, p.lam_plus(), p));
      for (int l = 0; l <= 2; ++l)
        packet = std::max(packet, mode_agreement(
                                      [&](double t) { return project_mode(sl, l, t, *rule, ax); },
                                      l, p, 0.0));
    }
    parts.add(flags, "packet_modes", packet, 1e-4);

    if (cfg.d == 2) {
      // Lambda^+(., y0) with y0 in the far past; the angular integral is split
      // where the slice crosses the light cone of y0.
      const TwoPointTable& T = detail::shared_table(p);
      const double ty = -3.0;
      Point y0 = ds_chart(ty, ax);
      FieldEvaluator u{[&](const Point& x) { return T.lambda(x, y0, Sign::PLUS); }, p, "lambda"};
      double kern = 0;
      for (int l = 0; l <= 2; ++l) {
        auto h = [&](double t) {
          double c = (1 + std::sinh(t) * std::sinh(ty)) / (std::cosh(t) * std::cosh(ty));
          double D = std::acos(std::clamp(c, -1.0, 1.0));
          return project_mode_arcs(u, l, t, ax, {D, -D});
        };
        kern = std::max(kern, mode_agreement(h, l, p, 0.0));
      }
      parts.add(flags, "kernel_modes", kern, 1e-3);
    } else {
      flags.push_back("kernel modes not evaluated in d = 3 (no kernel table)");
    }
    return parts.worst;
  });
}

CheckRecord mode_integrator(const RunConfig& cfg) {
  return make_record("mode_integrator", cfg.tol("mode_integrator", 1e-7), [&](auto&) {
    // Integrate out and back; the residual of the ODE is measured independently.
    ModelParams p = cfg.params();
    double worst = 0;
    for (int l = 0; l <= 3; ++l) {
      cplx h0(1.0, 0.3), d0(-0.2, 0.5);
      ModeSolution fw = mode_solve(l, p, -2.0, h0, d0, {-1.0, 0.0, 2.0});
      ModeSolution bw = mode_solve(l, p, 2.0, fw.values[2], fw.derivs[2], {-2.0});
      double scale = std::abs(h0) + std::abs(d0);
      worst = std::max(worst, (std::abs(bw.values[0] - h0) + std::abs(bw.derivs[0] - d0)) / scale);
      for (std::size_t i = 0; i < fw.grid.size(); ++i)
        worst = std::max(worst, std::abs(mode_residual(fw, p, i)));
    }
    return worst;
  });
}

}  // namespace dsbd::checks
