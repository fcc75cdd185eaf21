#include <cmath>
#include <numbers>

#include "dsbd/quadrature.hpp"
#include "dsbd/special.hpp"
#include "test_util.hpp"

using namespace dsbd;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("rule mass") {
  double m2 = 0, m3 = 0;
  RulePtr r2 = sphere_rule(2, 16), r3 = sphere_rule(3, 16);
  for (double w : r2->weights) m2 += w;
  for (double w : r3->weights) m3 += w;
  CHECK_ABS(m2, 2 * kPi / std::sqrt(2.0), 1e-13);
  CHECK_ABS(m3, 2 * kPi, 1e-13);
  CHECK_ABS(omega_mass(2), 4.442882938158366, 1e-13);
  auto one = BoundaryFunction::sample(sphere_rule(2, 16), [](const Vec&) { return cplx(1); });
  CHECK_ABS(integrate(one), cplx(4.442882938158366), 1e-13);
}

TEST_CASE("zonal harmonics") {
  for (int d : {2, 3}) {
    RulePtr r = sphere_rule(d, 32);
    BoundaryDirection ax = make_direction(random_unit(3, d));
    CHECK_ABS(zonal_poly(d, 0, 0.3), 1.0, 1e-15);
    for (int l = 0; l <= 5; ++l) CHECK_ABS(zonal_poly(d, l, 1.0), 1.0, 1e-14);
    std::vector<BoundaryFunction> z;
    for (int l = 0; l <= 4; ++l) z.push_back(zonal_basis(l, ax, r));
    for (int l = 1; l <= 4; ++l) CHECK_ABS(integrate(z[l]), cplx(0), 1e-12);
    for (int l = 0; l <= 4; ++l)
      for (int m = 0; m < l; ++m) CHECK_ABS(inner(z[l], z[m]), cplx(0), 1e-10);
    // linearity
    BoundaryFunction f = z[1] * cplx(0.3, 1) + z[2] * cplx(-2, 0.5);
    CHECK_ABS(integrate(f), cplx(0.3, 1) * integrate(z[1]) + cplx(-2, 0.5) * integrate(z[2]), 1e-13);
    // projection recovers the degree-2 component at the axis
    CHECK_ABS(project_degree(f, 2, ax.xi_hat), cplx(-2, 0.5), 1e-11);
    CHECK_ABS(project_degree(f, 3, ax.xi_hat), cplx(0), 1e-11);
  }
}

TEST_CASE("rule fingerprints") {
  CHECK(rule_fingerprint(*sphere_rule(2, 16)) == rule_fingerprint(*sphere_rule(2, 16)));
  CHECK(rule_fingerprint(*sphere_rule(2, 16)) != rule_fingerprint(*sphere_rule(2, 24)));
  CHECK(rule_fingerprint(*sphere_rule(2, 16)) != rule_fingerprint(*sphere_rule(3, 16)));
}

TEST_CASE("extrapolation") {
  std::vector<double> eps{1e-2, 5e-3, 2.5e-3};
  std::vector<cplx> lin;
  for (double e : eps) lin.push_back(cplx(1.5, -0.5) + cplx(3, 2) * e);
  CHECK_ABS(richardson(eps, lin).value, cplx(1.5, -0.5), 1e-13);
  // exact power model
  std::vector<cplx> pw, powers{0.5, 1.0};
  for (double e : eps) pw.push_back(2.0 + 4.0 * std::sqrt(e) - e);
  CHECK_ABS(extrapolate(eps, pw, powers).value, cplx(2.0), 1e-12);
}

TEST_CASE("epsilon kernel integrals") {
  // f = 1 and f = cos(phi) against (cos(phi) - 1/2 + i0)^{i - 1/2} on the
  // circle; references by adaptive quadrature in mpmath.
  ModelParams p(2, 1.0);
  RulePtr r = sphere_rule(p, 512);
  EpsKernel k = [&](const BoundaryDirection& b, double eps) {
    return reg_power(b.xi_hat[0] - 0.5, p.lam_plus(), Sign::PLUS, eps);
  };
  Extrapolated one = kernel_integral_extrapolated(k, BoundaryFunction::sample(r, [](const Vec&) { return cplx(1); }));
  CHECK_REL(one.value, cplx(0.30647162412591548, -1.8737159074098683), 1e-4);
  Extrapolated cs = kernel_integral_extrapolated(k, BoundaryFunction::sample(r, [](const Vec& x) { return cplx(x[0]); }));
  CHECK_REL(cs.value, cplx(0.51631488837919483, -1.456285273242532), 1e-4);
  // an eps-independent kernel integrates exactly
  BoundaryFunction f = BoundaryFunction::sample(r, [](const Vec& x) { return cplx(x[1] * x[1]); });
  EpsKernel flat = [](const BoundaryDirection& b, double) { return cplx(1 + b.xi_hat[0]); };
  CHECK_ABS(kernel_integral_extrapolated(flat, f).value, integrate(f), 1e-12);
}
