#include <cmath>
#include <numbers>

#include "dsbd/boundary.hpp"
#include "dsbd/special.hpp"
#include "dsbd/verify.hpp"
#include "verify_util.hpp"

namespace dsbd::checks {

using detail::Parts;
using detail::rel;
using detail::Sampler;

namespace {

constexpr double kPi = std::numbers::pi;

// Rule fine enough for the epsilon routes: their error is set by the node spacing.
RulePtr eps_rule(const RunConfig& cfg) {
  return sphere_rule(cfg.d, std::max(cfg.quad_order, cfg.d == 2 ? 512 : 128));
}

// Packets need only O(N) work per point, so d = 3 can afford the finer rule.
RulePtr eps_packet_rule(const RunConfig& cfg) {
  return sphere_rule(cfg.d, std::max(cfg.quad_order, cfg.d == 2 ? 512 : 1024));
}

BoundaryFunction test_profile(RulePtr rule, int d) {
  return zonal_basis(1, make_direction(Vec::Unit(d, 0)), rule) +
         zonal_basis(2, make_direction(random_unit(11, d)), rule) * cplx(0.5, 0.2);
}

double rel_l2(const BoundaryFunction& a, const BoundaryFunction& b) {
  return l2_norm(a - b) / std::max(l2_norm(b), 1e-300);
}

}  // namespace

CheckRecord gamma_and_constants(const RunConfig& cfg) {
  return make_record("gamma_and_constants", cfg.tol("gamma_and_constants", 1e-12), [&](auto&) {
    Sampler s(cfg.seed);
    double worst = rel(cgamma(0.5), std::sqrt(kPi));
    worst = std::max(worst, rel(cgamma(cplx(0, 1)) * cgamma(cplx(0, -1)), kPi / std::sinh(kPi)));
    for (int k = 0; k < 50; ++k) {
      cplx z(s.uniform(-4.5, 9), s.uniform(-10, 10));
      worst = std::max(worst, rel(cgamma(z + 1.0), z * cgamma(z)));
      worst = std::max(worst, rel(cgamma(z) * cgamma(1.0 - z), kPi / std::sin(kPi * z)));
    }
    ModelParams p = cfg.params();
    // a(-nu) is the conjugate of a(nu) for real nu
    worst = std::max(worst, rel(a_of_minus_nu(p), std::conj(a_of_nu(p))));
    return worst;
  });
}

CheckRecord branch_rule(const RunConfig& cfg) {
  return make_record("branch_rule", cfg.tol("branch_rule", 1e-8), [&](auto&) {
    ModelParams p = cfg.params();
    Sampler s(cfg.seed);
    double worst = 0;
    for (int k = 0; k < 50; ++k) {
      double a = s.uniform(-3, 3);
      cplx lam = k % 2 ? p.lam_plus() : p.lam_minus();
      for (Sign sg : {Sign::PLUS, Sign::MINUS}) {
        cplx want = a > 0 ? std::pow(a, lam)
                          : std::pow(-a, lam) * std::exp(cplx(0, sgn(sg) * kPi) * lam);
        worst = std::max(worst, rel(branch_power(a, lam, sg), want));
        worst = std::max(worst, rel(reg_power(a, lam, sg, 1e-11), want));
      }
    }
    return worst;
  });
}

CheckRecord rule_mass_and_orthogonality(const RunConfig& cfg) {
  return make_record("rule_mass_and_orthogonality", cfg.tol("rule_mass_and_orthogonality", 1e-12),
                     [&](auto&) {
                       RulePtr rule = sphere_rule(cfg.d, cfg.quad_order);
                       BoundaryDirection ax = make_direction(random_unit(cfg.seed, cfg.d));
                       double mass = omega_mass(cfg.d);
                       double worst = rel(integrate(BoundaryFunction::sample(
                                              rule, [](const Vec&) { return cplx(1); })),
                                          mass);
                       int L = std::min(rule->band_limit, 6);
                       for (int l = 0; l <= L; ++l)
                         for (int m = 0; m <= L; ++m) {
                           cplx g = inner(zonal_basis(l, ax, rule), zonal_basis(m, ax, rule));
                           double want = l == m ? mass / zonal_multiplicity(cfg.d, l) : 0.0;
                           worst = std::max(worst, std::abs(g - want) / mass);
                         }
                       return worst;
                     });
}

CheckRecord field_equations(const RunConfig& cfg) {
  return make_record("field_equations", cfg.tol("field_equations", 1e-4), [&](auto& flags) {
    ModelParams p = cfg.params();
    RulePtr rule = sphere_rule(p, cfg.quad_order);
    BoundaryFunction psi = test_profile(rule, cfg.d);
    Sampler s(cfg.seed);
    double kg = 0, hyp = 0;
    for (Sign sg : {Sign::PLUS, Sign::MINUS}) {
      FieldEvaluator u = WavePacket(psi, sg, p.lam_plus(), p).as_field();
      for (int k = 0; k < 3; ++k) {
        double t = s.uniform(-1.5, 1.5);
        Vec w = s.unit(cfg.d);
        kg = std::max(kg, std::abs(kg_residual(u, t, w, p)) / std::abs(u(ds_chart(t, w))));
      }
      for (int k = 0; k < 2; ++k) {
        double sh = s.uniform(0.3, 1.5);
        Vec w = s.unit(cfg.d);
        hyp = std::max(hyp, std::abs(hyp_residual(u, sh, w, Sign::PLUS, p)) /
                                std::abs(u(hyp_chart(sh, w, Sign::PLUS))));
      }
    }
    flags.push_back(detail::fmt("ds", kg));
    flags.push_back(detail::fmt("hyperbolic", hyp));
    return std::max(kg, hyp);
  });
}

CheckRecord packet_routes_agree(const RunConfig& cfg) {
  return make_record("packet_routes_agree", cfg.tol("packet_routes_agree", 1e-4), [&](auto&) {
    ModelParams p = cfg.params();
    RulePtr rule = eps_packet_rule(cfg);
    BoundaryFunction psi = test_profile(rule, cfg.d);
    PacketOptions eo, so;
    eo.route = Route::EPSILON;
    eo.eps_schedule = cfg.eps_schedule;
    so.band_limit = 4;  // the profile has degree 2
    Sampler s(cfg.seed);
    double worst = 0;
    for (Sign sg : {Sign::PLUS, Sign::MINUS}) {
      WavePacket spec(psi, sg, p.lam_plus(), p, so), eps(psi, sg, p.lam_plus(), p, eo);
      for (int k = 0; k < 3; ++k) {
        Point x = s.ds(cfg.d, 1.0);
        worst = std::max(worst, rel(eps(x), spec(x)));
      }
    }
    return worst;
  });
}

CheckRecord packet_symmetries(const RunConfig& cfg) {
  return make_record("packet_symmetries", cfg.tol("packet_symmetries", 1e-12), [&](auto& flags) {
    // conj P(conj v, +, i nu - alpha) = P(v, -, -i nu - alpha); the two signs differ.
    ModelParams p = cfg.params();
    RulePtr rule = sphere_rule(p, cfg.quad_order);
    BoundaryFunction psi = test_profile(rule, cfg.d);
    WavePacket a(psi.conj(), Sign::PLUS, p.lam_plus(), p), b(psi, Sign::MINUS, p.lam_minus(), p);
    WavePacket c(psi, Sign::PLUS, p.lam_plus(), p), m(psi, Sign::MINUS, p.lam_plus(), p);
    Sampler s(cfg.seed + 3);
    double worst = 0, apart = 1e300;
    for (int k = 0; k < 5; ++k) {
      Point x = s.ds(cfg.d, 1.5);
      worst = std::max(worst, rel(std::conj(a(x)), b(x)));
      apart = std::min(apart, std::abs(c(x) - m(x)) / std::max(std::abs(c(x)), std::abs(m(x))));
    }
    flags.push_back(detail::fmt("conjugation", worst));
    flags.push_back(detail::fmt("sign_separation", apart));
    return apart > 1e-3 ? worst : 1.0;
  });
}

CheckRecord delta_identity(const RunConfig& cfg) {
  return make_record("delta_identity", cfg.tol("delta_identity", 1e-2), [&](auto& flags) {
    // int omega(xi') (xi.xi')^{i nu - alpha} (xi'.eta)^{-i nu - alpha} = a(nu) a(-nu) delta,
    // applied to zonal functions with both kernels epsilon-regularized. In d = 2
    // the kernels act on the nodes of a fine rule; in d = 3 a node rule fine
    // enough is out of reach and the kernels act through their zonal reduction.
    ModelParams p = cfg.params();
    RulePtr rule = cfg.d == 2 ? eps_rule(cfg) : sphere_rule(cfg.d, std::max(cfg.quad_order, 16));
    BoundaryDirection ax = make_direction(Vec::Unit(cfg.d, 0));
    cplx aa = a_of_nu(p) * a_of_minus_nu(p);
    std::vector<BoundaryFunction> z;
    for (int l = 0; l <= 3; ++l) z.push_back(zonal_basis(l, ax, rule));
    std::vector<cplx> ef, ei;
    if (cfg.d != 2) {
      ef = smatrix_eigenvalues_eps(p, SDirection::FORWARD, 3);
      ei = smatrix_eigenvalues_eps(p, SDirection::INVERSE, 3);
      flags.push_back("route: zonal reduction");
    } else {
      flags.push_back("route: rule nodes");
    }
    double diag = 0, off = 0, scale = 0;
    for (int m = 0; m <= 3; ++m) {
      BoundaryFunction both;
      if (cfg.d == 2) {
        BoundaryFunction inner_k = smatrix_apply_eps(z[m], SDirection::INVERSE, p, cfg.eps_schedule);
        both = smatrix_apply_eps(inner_k, SDirection::FORWARD, p, cfg.eps_schedule) * aa;
      } else {
        both = z[m] * (ef[m] * ei[m] * aa);
      }
      for (int l = 0; l <= 3; ++l) {
        cplx got = inner(z[l], both);
        if (l == m) {
          cplx want = aa * inner(z[l], z[m]);
          diag = std::max(diag, rel(got, want));
          scale = std::max(scale, std::abs(want));
        } else {
          off = std::max(off, std::abs(got));
        }
      }
    }
    off /= scale;
    flags.push_back(detail::fmt("diagonal", diag));
    flags.push_back(detail::fmt("off_diagonal", off));
    return std::max(diag, off);
  });
}

CheckRecord smatrix_inversion(const RunConfig& cfg) {
  return make_record("smatrix_inversion", cfg.tol("smatrix_inversion", 1e-3), [&](auto&) {
    ModelParams p = cfg.params();
    RulePtr rule = sphere_rule(p, std::max(cfg.quad_order, 16));
    BoundaryDirection ax = make_direction(random_unit(cfg.seed, cfg.d));
    double worst = 0;
    for (int l = 0; l <= 4; ++l) {
      BoundaryFunction z = zonal_basis(l, ax, rule);
      BoundaryFunction back = smatrix_apply(smatrix_apply(z, SDirection::INVERSE, p),
                                            SDirection::FORWARD, p);
      worst = std::max(worst, rel_l2(back, z));
      back = smatrix_apply(smatrix_apply(z, SDirection::FORWARD, p), SDirection::INVERSE, p);
      worst = std::max(worst, rel_l2(back, z));
    }
    return worst;
  });
}

CheckRecord smatrix_routes_agree(const RunConfig& cfg) {
  return make_record("smatrix_routes_agree", cfg.tol("smatrix_routes_agree", 1e-3), [&](auto&) {
    ModelParams p = cfg.params();
    RulePtr rule = eps_rule(cfg);
    BoundaryDirection ax = make_direction(random_unit(cfg.seed, cfg.d));
    double worst = 0;
    for (SDirection dir : {SDirection::FORWARD, SDirection::INVERSE}) {
      std::vector<cplx> ev = smatrix_eigenvalues(p, dir, 4);
      if (cfg.d != 2) {
        // zonal reduction of the regularized kernel (see delta_identity)
        std::vector<cplx> ee = smatrix_eigenvalues_eps(p, dir, 4);
        for (int l = 0; l <= 4; ++l) worst = std::max(worst, rel(ee[l], ev[l]));
        continue;
      }
      for (int l = 0; l <= 4; ++l) {
        BoundaryFunction z = zonal_basis(l, ax, rule);
        worst = std::max(worst, rel_l2(smatrix_apply_eps(z, dir, p, cfg.eps_schedule), z * ev[l]));
      }
    }
    return worst;
  });
}

CheckRecord smatrix_rotation(const RunConfig& cfg) {
  return make_record("smatrix_rotation", cfg.tol("smatrix_rotation", 1e-3), [&](auto&) {
    // The epsilon-route S maps a zonal function about any axis to a multiple of itself.
    ModelParams p = cfg.params();
    RulePtr rule = eps_rule(cfg);
    double worst = 0;
    for (int l = 0; l <= 3; ++l) {
      BoundaryFunction z = zonal_basis(l, make_direction(random_unit(cfg.seed + l, cfg.d)), rule);
      BoundaryFunction sz = smatrix_apply_eps(z, SDirection::FORWARD, p, cfg.eps_schedule);
      cplx k = inner(z, sz) / inner(z, z);
      worst = std::max(worst, l2_norm(sz - z * k) / l2_norm(sz));
    }
    return worst;
  });
}

CheckRecord inv_identity(const RunConfig& cfg) {
  return make_record("inv_identity", cfg.tol("inv_identity", 1.0), [&](auto& flags) {
    InvExtrapolation r = inv_identity_extrapolated(cfg.params(), 0.3, 0.15, 4);
    Parts parts;
    parts.add(flags, "eta_0.3", r.defect_eta1, 1e-3);
    parts.add(flags, "eta_0.15", r.defect_eta2, 1e-3);
    parts.add(flags, "extrapolated", r.defect_extrapolated, 5e-3);
    flags.push_back(detail::fmt("real_nu_direct", r.defect_real));
    return parts.worst;
  });
}

}  // namespace dsbd::checks
