#include <cmath>
#include <numbers>

#include "dsbd/boundary.hpp"
#include "dsbd/special.hpp"
#include "dsbd/verify.hpp"
#include "verify_util.hpp"

namespace dsbd::checks {

using detail::Parts;
using detail::rel;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_l2(const BoundaryFunction& a, const BoundaryFunction& b) {
  return l2_norm(a - b) / std::max(l2_norm(b), 1e-300);
}

// Zonal profiles of degree <= 2 about fixed axes, the test inputs of this suite.
std::vector<BoundaryFunction> zonal_profiles(RulePtr rule, int d) {
  std::vector<BoundaryFunction> out;
  out.push_back(zonal_basis(0, make_direction(Vec::Unit(d, 0)), rule) +
                zonal_basis(1, make_direction(Vec::Unit(d, 0)), rule) * cplx(0.3, -0.4));
  out.push_back(zonal_basis(1, make_direction(random_unit(21, d)), rule) * cplx(0, 1));
  out.push_back(zonal_basis(2, make_direction(random_unit(22, d)), rule) +
                zonal_basis(1, make_direction(random_unit(23, d)), rule) * 0.5);
  return out;
}

Vec circle(double phi) {
  Vec w(2);
  w << std::cos(phi), std::sin(phi);
  return w;
}

}  // namespace

CheckRecord ordering_calibration(const RunConfig& cfg, OrderingCalibration* out) {
  return make_record("ordering_calibration", cfg.tol("ordering_calibration", 1e-2), [&](auto& flags) {
    OrderingCalibration c = calibrate_ordering(cfg.params(), 32, 1e-2, cfg.fit());
    if (out) *out = c;
    flags.push_back("chosen: " + to_string(c.chosen));
    flags.push_back(detail::fmt("printed", c.defect_printed));
    flags.push_back(detail::fmt("swapped", c.defect_swapped));
    if (!c.unique) flags.push_back("no unique ordering");
    if (!c.unique || c.chosen != kDefaultOrdering) return 1.0;
    return c.chosen == RhoOrdering::SWAPPED ? c.defect_swapped : c.defect_printed;
  });
}

CheckRecord plane_wave_asymptotics(const RunConfig& cfg) {
  return make_record("plane_wave_asymptotics", cfg.tol("plane_wave_asymptotics", 1e-2), [&](auto& flags) {
    // Sign +- packets with exponent i nu - alpha: w^+ = e^{-+nu pi} a(nu) psi and
    // w^- = int omega(xi') (xi.xi')^{i nu - alpha} psi(xi') = a(nu) S psi.
    ModelParams p = cfg.params();
    RulePtr rule = sphere_rule(p, cfg.quad_order);
    cplx a = a_of_nu(p);
    double wp = 0, wm = 0, res = 0;
    for (const BoundaryFunction& psi : zonal_profiles(rule, cfg.d)) {
      BoundaryFunction spsi = smatrix_apply(psi, SDirection::FORWARD, p) * a;
      for (Sign s : {Sign::PLUS, Sign::MINUS}) {
        WavePacket u(psi, s, p.lam_plus(), p);
        RhoExtraction ex = extract_rho(slice_of(u), rule, p, cfg.fit());
        cplx k = std::exp(-sgn(s) * p.nu * kPi) * a;
        wp = std::max(wp, rel_l2(ex.f.w_plus, psi * k));
        wm = std::max(wm, rel_l2(ex.f.w_minus, spsi));
        res = std::max(res, ex.residual);
      }
    }
    flags.push_back(detail::fmt("w_plus", wp));
    flags.push_back(detail::fmt("w_minus", wm));
    flags.push_back(detail::fmt("fit_residual", res));
    return std::max(wp, wm);
  });
}

CheckRecord plane_wave_data_dual(const RunConfig& cfg) {
  return make_record("plane_wave_data_dual", cfg.tol("plane_wave_data_dual", 1e-2), [&](auto& flags) {
    // Sign +- packets with exponent -i nu - alpha carry data e^{+-nu pi} K psi in
    // one component, K psi = int omega(xi') (xi.xi')^{-i nu - alpha} psi(xi').
    ModelParams p = cfg.params();
    RulePtr rule = sphere_rule(p, cfg.quad_order);
    double on = 0, off = 0;
    for (const BoundaryFunction& psi : zonal_profiles(rule, cfg.d)) {
      BoundaryFunction kpsi = smatrix_apply(psi, SDirection::INVERSE, p) * a_of_minus_nu(p);
      for (Sign s : {Sign::PLUS, Sign::MINUS}) {
        WavePacket u(psi, s, p.lam_minus(), p);
        AsymptoticData d = extract_rho(slice_of(u), rule, p, cfg.fit()).data;
        BoundaryFunction want = kpsi * std::exp(sgn(s) * p.nu * kPi);
        const BoundaryFunction& got = s == Sign::PLUS ? d.v_plus : d.v_minus;
        const BoundaryFunction& zero = s == Sign::PLUS ? d.v_minus : d.v_plus;
        on = std::max(on, rel_l2(got, want));
        off = std::max(off, l2_norm(zero) / l2_norm(want));
      }
    }
    flags.push_back(detail::fmt("component", on));
    flags.push_back(detail::fmt("vanishing_component", off));
    return std::max(on, off);
  });
}

CheckRecord round_trip(const RunConfig& cfg) {
  return make_record("round_trip", cfg.tol("round_trip", 1e-3), [&](auto& flags) {
    ModelParams p = cfg.params();
    RulePtr rule = sphere_rule(p, cfg.quad_order);
    auto z = zonal_profiles(rule, cfg.d);
    std::vector<AsymptoticData> inputs{AsymptoticData(z[0], z[1]), AsymptoticData(z[2], z[0] * 0.5),
                                       AsymptoticData(BoundaryFunction::zero(rule), z[2])};
    double worst = 0, res = 0, cond = 0;
    for (const AsymptoticData& v : inputs) {
      Reconstruction u(v, p);
      RhoExtraction ex = extract_rho(slice_of(u), rule, p, cfg.fit());
      AsymptoticData diff = ex.data - v;
      double num = std::hypot(l2_norm(diff.v_plus), l2_norm(diff.v_minus));
      double den = std::hypot(l2_norm(v.v_plus), l2_norm(v.v_minus));
      worst = std::max(worst, num / den);
      res = std::max(res, ex.residual);
      cond = std::max(cond, ex.max_condition);
      if (ex.flagged) flags.push_back("ill-conditioned fits: " + std::to_string(ex.flagged));
    }
    flags.push_back(detail::fmt("fit_residual", res));
    flags.push_back(detail::fmt("fit_condition", cond));
    return worst;
  });
}

CheckRecord fit_window_convergence(const RunConfig& cfg) {
  return make_record("fit_window_convergence", cfg.tol("fit_window_convergence", 1e-4), [&](auto&) {
    // The fitted coefficients do not depend on where the window sits.
    ModelParams p = cfg.params();
    RulePtr rule = sphere_rule(p, cfg.quad_order);
    BoundaryFunction psi = zonal_profiles(rule, cfg.d)[2];
    FieldEvaluator u = WavePacket(psi, Sign::PLUS, p.lam_plus(), p).as_field();
    FitOptions a = cfg.fit(), b = cfg.fit();
    b.t_lo += 0.5;
    b.t_hi += 0.5;
    double worst = 0;
    for (int k = 0; k < 3; ++k) {
      Vec xi = random_unit(cfg.seed + 31 + k, cfg.d);
      FitResult ra = extract_f_asymptotics(u, xi, p, a), rb = extract_f_asymptotics(u, xi, p, b);
      double scale = std::max(std::abs(ra.w_plus), std::abs(ra.w_minus));
      worst = std::max(worst, std::abs(ra.w_plus - rb.w_plus) / scale);
      worst = std::max(worst, std::abs(ra.w_minus - rb.w_minus) / scale);
    }
    return worst;
  });
}

CheckRecord bunch_davies_data(const RunConfig& cfg) {
  return make_record("bunch_davies_data", cfg.tol("bunch_davies_data", 1e-2), [&](auto& flags) {
    // u(x) = int Lambda^+(x, y) g(y) dy is a sign-- packet in x, so its data is
    // (0, c a(nu) e^{-nu pi} int g(y) (xi.y^+)^{-i nu - alpha} dy).
    if (cfg.d != 2) throw ArgumentError("bunch_davies_data: d = 2 only");
    ModelParams p = cfg.params();
    const TwoPointTable& T = detail::shared_table(p);
    RulePtr rule = sphere_rule(p, cfg.quad_order);
    PairKernel lam = [&T](const Point& x, const Point& y) { return T.lambda(x, y, Sign::PLUS); };
    Bump g;
    g.t0 = 0.2;
    g.w0 = circle(0.4);
    const int n = 32;
    SliceFn slice = [&](double t, const Mat& dirs) {
      CVec out(dirs.cols());
      for (Eigen::Index k = 0; k < dirs.cols(); ++k)
        out[k] = smear_bump(ds_chart(t, dirs.col(k)), g, lam, n, n);
      return out;
    };
    RhoExtraction ex = extract_rho(slice, rule, p, cfg.fit());
    double vanish = l2_norm(ex.data.v_plus) / l2_norm(ex.data.v_minus);

    cplx pref = c_of(p) * a_of_nu(p) * std::exp(-p.nu * kPi);
    ChartGrid grid = bump_grid(g, p.d, n, n);
    double match = 0;
    for (const BoundaryFunction& psi : zonal_profiles(rule, cfg.d)) {
      WavePacket w(psi.conj(), Sign::PLUS, p.lam_minus(), p);
      std::vector<cplx> terms(grid.points.size());
      for (std::size_t k = 0; k < grid.points.size(); ++k) terms[k] = grid.weights[k] * w(grid.points[k]);
      cplx want = pref * pairwise_sum(terms.data(), terms.size());
      match = std::max(match, rel(inner(psi, ex.data.v_minus), want));
    }
    flags.push_back(detail::fmt("vanishing_component", vanish));
    flags.push_back(detail::fmt("smeared_component", match));
    flags.push_back(detail::fmt("fit_residual", ex.residual));
    return std::max(vanish, match);
  });
}

CheckRecord symplectic_identity(const RunConfig& cfg) {
  return make_record("symplectic_identity", cfg.tol("symplectic_identity", 2e-3), [&](auto& flags) {
    if (cfg.d != 2) throw ArgumentError("symplectic_identity: d = 2 only");
    const TwoPointTable& T = detail::shared_table(cfg.params());
    Bump f1, f2, f3, f4;
    f1.t0 = 0.0, f1.w0 = circle(0.0);
    f2.t0 = 0.9, f2.w0 = circle(0.2);
    f3.t0 = -0.4, f3.w0 = circle(2.0), f3.b = 0.4;
    f4.t0 = 0.5, f4.w0 = circle(-0.6);
    SymplecticOptions opt;
    opt.rule_order = cfg.quad_order;
    opt.fit = cfg.fit();
    double worst = 0;
    std::vector<std::pair<Bump, Bump>> prs{{f1, f2}, {f2, f3}, {f1, f4}};
    for (auto& [a, b] : prs) {
      SymplecticResult r = symplectic_check(a, b, T, opt);
      flags.push_back(detail::fmt("pair_defect", r.defect));
      worst = std::max(worst, r.defect);
    }
    return worst;
  });
}

}  // namespace dsbd::checks
