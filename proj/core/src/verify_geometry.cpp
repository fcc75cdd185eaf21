#include <cmath>

#include "dsbd/fields.hpp"
#include "dsbd/verify.hpp"
#include "verify_util.hpp"

namespace dsbd::checks {

using detail::Sampler;

namespace {

Vec random_vec(Sampler& s, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = s.uniform(-2, 2);
  return v;
}

}  // namespace

CheckRecord mink_symmetry(const RunConfig& cfg) {
  return make_record("mink_symmetry", cfg.tol("mink_symmetry", 1e-14), [&](auto&) {
    Sampler s(cfg.seed);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      Vec x = random_vec(s, cfg.d + 1), y = random_vec(s, cfg.d + 1);
      worst = std::max(worst, std::abs(mink_dot(x, y) - mink_dot(y, x)));
    }
    return worst;
  });
}

CheckRecord lorentz_preserves_product(const RunConfig& cfg) {
  return make_record("lorentz_preserves_product", cfg.tol("lorentz_preserves_product", 1e-12),
                     [&](auto&) {
                       Sampler s(cfg.seed);
                       double worst = 0;
                       for (int k = 0; k < 100; ++k) {
                         LorentzMap L = random_lorentz(cfg.seed + k, 1.0, cfg.d);
                         Vec x = random_vec(s, cfg.d + 1), y = random_vec(s, cfg.d + 1);
                         double ref = mink_dot(x, y);
                         worst = std::max(worst, std::abs(mink_dot(L.apply(x), L.apply(y)) - ref) /
                                                     std::max(1.0, std::abs(ref)));
                       }
                       return worst;
                     });
}

CheckRecord point_invariants(const RunConfig& cfg) {
  return make_record("point_invariants", cfg.tol("point_invariants", 1e-14), [&](auto& flags) {
    Sampler s(cfg.seed);
    double worst = 0;
    int bad_region = 0;
    for (int k = 0; k < 100; ++k) {
      Point x = make_point(random_vec(s, cfg.d + 1));
      worst = std::max(worst, std::abs(x.f * x.f - std::abs(x.mu)));
      worst = std::max(worst, std::abs(x.mu * x.rho * x.rho - x.xx) / (x.rho * x.rho));
      Region want = x.mu < 0 ? Region::DS : (x.x0 > 0 ? Region::H_PLUS : Region::H_MINUS);
      if (x.region != want) ++bad_region;
      Point s1 = to_sphere(x), s2 = to_sphere(s1);
      worst = std::max(worst, (s1.coords - s2.coords).norm());
      worst = std::max(worst, std::abs(s1.mu - x.mu));
    }
    if (bad_region) flags.push_back("region mismatches: " + std::to_string(bad_region));
    return bad_region ? 1.0 : worst;
  });
}

CheckRecord chart_identities(const RunConfig& cfg) {
  return make_record("chart_identities", cfg.tol("chart_identities", 1e-14), [&](auto&) {
    Sampler s(cfg.seed);
    double worst = 0;
    for (int k = 0; k < 50; ++k) {
      double t = s.uniform(-2.5, 2.5);
      Vec w = s.unit(cfg.d);
      Point x = ds_chart(t, w);
      worst = std::max(worst, std::abs(x.mu + 1.0 / std::cosh(2 * t)));
      worst = std::max(worst, std::abs(x.xx + 1.0));
      worst = std::max(worst, (xi_limit(x, x.x0 >= 0 ? Sign::PLUS : Sign::MINUS).xi_hat - w).norm());
      // on dS with r = 1 the sphere representative is f x
      worst = std::max(worst, (to_sphere(x).coords - x.f * x.coords).norm());
      double sh = std::abs(t) + 0.1;
      for (Sign b : {Sign::PLUS, Sign::MINUS}) {
        Point h = hyp_chart(sh, w, b);
        worst = std::max(worst, std::abs(h.mu - 1.0 / std::cosh(2 * sh)));
        if (h.region != (b == Sign::PLUS ? Region::H_PLUS : Region::H_MINUS)) return 1.0;
      }
    }
    return worst;
  });
}

CheckRecord sphere_product_identity(const RunConfig& cfg) {
  return make_record("sphere_product_identity", cfg.tol("sphere_product_identity", 1e-14),
                     [&](auto&) {
                       Sampler s(cfg.seed);
                       double worst = 0;
                       for (int k = 0; k < 100; ++k) {
                         // sphere point with x0 > 0 on either side of the cone
                         double th = s.uniform(0.05, 1.5);
                         Vec xh = s.unit(cfg.d);
                         Vec c(cfg.d + 1);
                         c[0] = std::sin(th);
                         c.tail(cfg.d) = std::cos(th) * xh;
                         Point x = make_point(c);
                         BoundaryDirection xi = make_direction(s.unit(cfg.d));
                         double lhs = mink_dot(x.coords, xi.embedded);
                         double rhs = 0.5 * (std::sqrt(1 + x.mu) - std::sqrt(1 - x.mu) *
                                                                        xh.dot(xi.xi_hat));
                         worst = std::max(worst, std::abs(lhs - rhs));
                       }
                       return worst;
                     });
}

CheckRecord boundary_limit_identity(const RunConfig& cfg) {
  return make_record("boundary_limit_identity", cfg.tol("boundary_limit_identity", 1e-14),
                     [&](auto&) {
                       Sampler s(cfg.seed);
                       double worst = 0;
                       for (int k = 0; k < 100; ++k) {
                         Point x = s.ds(cfg.d);
                         BoundaryDirection a = xi_limit(x, x.x0 >= 0 ? Sign::PLUS : Sign::MINUS);
                         BoundaryDirection b = make_direction(s.unit(cfg.d));
                         double lhs = mink_dot(a.embedded, b.embedded);
                         double rhs = 0.25 * (a.xi_hat - b.xi_hat).squaredNorm();
                         worst = std::max(worst, std::abs(lhs - rhs));
                       }
                       return worst;
                     });
}

CheckRecord conformal_plane_waves(const RunConfig& cfg) {
  return make_record("conformal_plane_waves", cfg.tol("conformal_plane_waves", 1e-12), [&](auto&) {
    ModelParams p = cfg.params();
    Sampler s(cfg.seed);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      Point x = k % 2 ? s.ds(cfg.d) : s.hyp(cfg.d, Sign::PLUS);
      BoundaryDirection xi = make_direction(s.unit(cfg.d));
      Sign sg = k % 4 < 2 ? Sign::PLUS : Sign::MINUS;
      cplx lam = p.lam_plus();
      cplx lhs = plane_wave(to_sphere(x), xi, sg, lam);
      cplx rhs = std::pow(x.f, lam) * plane_wave(x, xi, sg, lam);
      worst = std::max(worst, detail::rel(lhs, rhs));
    }
    return worst;
  });
}

}  // namespace dsbd::checks
