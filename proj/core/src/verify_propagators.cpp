#include <cmath>

#include "dsbd/propagators.hpp"
#include "dsbd/verify.hpp"
#include "verify_util.hpp"

namespace dsbd::checks {

using detail::one_plus_z;
using detail::Parts;
using detail::rel;
using detail::Sampler;

namespace {

// Random dS pairs with 1 + x.y in the given band (sign selects spacelike or timelike).
std::vector<std::pair<Point, Point>> pairs(Sampler& s, int d, int n, bool spacelike) {
  std::vector<std::pair<Point, Point>> out;
  while (static_cast<int>(out.size()) < n) {
    Point x = s.ds(d, 1.5), y = s.ds(d, 1.5);
    double w = one_plus_z(x, y);
    if (spacelike ? (w > 0.05 && w < 1.9) : (w < -0.05 && w > -20)) out.emplace_back(x, y);
  }
  return out;
}

cplx direct(const Point& x, const Point& y, Sign s, const ModelParams& p) {
  return lambda_ds(x, y, s, p).value;
}

std::vector<Bump> separated_bumps(int d) {
  std::vector<Bump> fs(4);
  const double t0[] = {0.0, 0.5, -0.4, 0.2};
  for (int k = 0; k < 4; ++k) {
    fs[k].t0 = t0[k];
    Vec w = Vec::Zero(d);
    w[0] = std::cos(1.5 * k);
    w[1] = std::sin(1.5 * k);
    fs[k].w0 = w;
  }
  return fs;
}

}  // namespace

CheckRecord bunch_davies_kernel(const RunConfig& cfg) {
  return make_record("bunch_davies_kernel", cfg.tol("bunch_davies_kernel", 1.0), [&](auto& flags) {
    ModelParams p = cfg.params();
    Sampler s(cfg.seed);
    bool light = cfg.d == 3;  // the direct kernel costs about a second per pair in d = 3
    Parts parts;

    double herm = 0;
    auto mixed = pairs(s, cfg.d, light ? 1 : 3, true);
    for (auto& pr : pairs(s, cfg.d, light ? 1 : 3, false)) mixed.push_back(pr);
    for (auto& [x, y] : mixed) {
      cplx v = direct(x, y, Sign::PLUS, p);
      herm = std::max(herm, rel(direct(x, y, Sign::MINUS, p), std::conj(v)));
      herm = std::max(herm, rel(direct(y, x, Sign::PLUS, p), std::conj(v)));
    }
    parts.add(flags, "hermiticity", herm, 1e-6);

    double lor = 0;
    for (auto& [x, y] : mixed) {
      LorentzMap L = random_lorentz(cfg.seed + 101, 0.5, cfg.d);
      lor = std::max(lor, rel(direct(L.apply(x), L.apply(y), Sign::PLUS, p),
                              direct(x, y, Sign::PLUS, p)));
    }
    parts.add(flags, "lorentz_invariance", lor, 1e-5);

    double bis = 0;
    Point y0 = ds_chart(0.0, Vec::Unit(cfg.d, 0));
    FieldEvaluator u{[&](const Point& x) { return direct(x, y0, Sign::PLUS, p); }, p, "lambda"};
    const double ts[] = {0.3, -0.5};
    for (int k = 0; k < (light ? 1 : 2); ++k) {
      Vec w = Vec::Zero(cfg.d);
      w[0] = std::cos(1.7 + k);
      w[1] = std::sin(1.7 + k);
      bis = std::max(bis, std::abs(kg_residual(u, ts[k], w, p)) / std::abs(u(ds_chart(ts[k], w))));
    }
    parts.add(flags, "bisolution", bis, 1e-4);

    double causal = 0;
    for (auto& [x, y] : pairs(s, cfg.d, 20, true)) {
      cplx a = direct(x, y, Sign::PLUS, p), b = direct(x, y, Sign::MINUS, p);
      causal = std::max(causal, std::abs(a - b) / std::abs(a));
    }
    parts.add(flags, "causal_support", causal, 1e-5);

    if (cfg.d == 2) {
      const TwoPointTable& T = detail::shared_table(p);
      GramResult g = gram_matrix(
          separated_bumps(cfg.d), cfg.d,
          [&](const Point& x, const Point& y) { return T.lambda(x, y, Sign::PLUS); }, 20, 21);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.matrix);
      double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
      parts.add(flags, "gram_negativity", std::max(0.0, -lo / hi), 1e-6);
      flags.push_back(detail::fmt("gram_min_eig", lo));
      flags.push_back(detail::fmt("gram_max_eig", hi));
      flags.push_back(detail::fmt("gram_quadrature_asymmetry", g.hermiticity_defect));
      if (g.coarse) flags.push_back("gram: coarse quadrature (asymmetry above 1e-4)");
    } else {
      flags.push_back("gram positivity not evaluated in d = 3 (direct kernel too slow)");
      flags.push_back("reduced sample counts in d = 3");
    }
    return parts.worst;
  });
}

CheckRecord kernel_routes_agree(const RunConfig& cfg) {
  return make_record("kernel_routes_agree", cfg.tol("kernel_routes_agree", 1e-4), [&](auto&) {
    ModelParams p = cfg.params();
    Sampler s(cfg.seed + 5);
    KernelOptions eo;
    eo.route = Route::EPSILON;
    if (cfg.d == 3) eo.eps_rule_order = 2048;  // the default 512 resolves only about 1e-2
    double worst = 0;
    auto ps = pairs(s, cfg.d, 1, true);
    for (auto& pr : pairs(s, cfg.d, 1, false)) ps.push_back(pr);
    for (auto& [x, y] : ps)
      worst = std::max(worst, rel(lambda_ds(x, y, Sign::PLUS, p, eo).value,
                                  direct(x, y, Sign::PLUS, p)));
    return worst;
  });
}

CheckRecord kernel_table_accuracy(const RunConfig& cfg) {
  return make_record("kernel_table_accuracy", cfg.tol("kernel_table_accuracy", 1e-9), [&](auto&) {
    ModelParams p = cfg.params();
    const TwoPointTable& T = detail::shared_table(p);
    Sampler s(cfg.seed + 7);
    double worst = 0;
    for (bool sp : {true, false})
      for (auto& [x, y] : pairs(s, cfg.d, 5, sp))
        for (Sign sg : {Sign::PLUS, Sign::MINUS})
          worst = std::max(worst, rel(T.lambda(x, y, sg), direct(x, y, sg, p)));
    return worst;
  });
}

CheckRecord sphere_kernel_relation(const RunConfig& cfg) {
  return make_record("sphere_kernel_relation", cfg.tol("sphere_kernel_relation", 1e-6), [&](auto&) {
    ModelParams p = cfg.params();
    Sampler s(cfg.seed + 9);
    double worst = 0;
    auto ps = pairs(s, cfg.d, 1, true);
    for (auto& pr : pairs(s, cfg.d, 1, false)) ps.push_back(pr);
    for (auto& [x, y] : ps) {
      cplx want = std::pow(x.f, p.lam_plus()) * std::pow(y.f, p.lam_minus()) *
                  direct(x, y, Sign::PLUS, p);
      worst = std::max(worst, rel(lambda_sphere(x, y, Sign::PLUS, p).value, want));
    }
    return worst;
  });
}

CheckRecord causal_antisymmetry(const RunConfig& cfg) {
  return make_record("causal_antisymmetry", cfg.tol("causal_antisymmetry", 1e-8), [&](auto& flags) {
    ModelParams p = cfg.params();
    Sampler s(cfg.seed + 11);
    double worst = 0, nonzero = 0;
    for (auto& [x, y] : pairs(s, cfg.d, cfg.d == 2 ? 3 : 1, false)) {
      cplx a = causal_e(x, y, p).value, b = causal_e(y, x, p).value;
      double scale = std::abs(direct(x, y, Sign::PLUS, p));
      worst = std::max(worst, std::abs(a + b) / scale);
      worst = std::max(worst, std::abs(a.imag()) / scale);  // E is real
      nonzero = std::max(nonzero, std::abs(a) / scale);
    }
    flags.push_back(detail::fmt("timelike_E_over_lambda", nonzero));
    // E must not vanish identically on timelike pairs
    return nonzero > 1e-3 ? worst : 1.0;
  });
}

}  // namespace dsbd::checks
