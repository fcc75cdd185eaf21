#include <cmath>
#include <numbers>

#include "dsbd/boundary.hpp"
#include "dsbd/special.hpp"
#include "test_util.hpp"

using namespace dsbd;

namespace {

Vec circle(double phi) {
  Vec w(2);
  w << std::cos(phi), std::sin(phi);
  return w;
}

double rel_l2(const BoundaryFunction& a, const BoundaryFunction& b) { return l2_norm(a - b) / l2_norm(b); }

}  // namespace

TEST_CASE("fits of exact basis members") {
  ModelParams p(2, 1.0);
  std::vector<double> t;
  std::vector<cplx> u;
  cplx wp(0.3, -0.2), wm(1.0, 0.0);
  for (int k = 0; k < 8; ++k) {
    t.push_back(4.0 + 2.0 * k / 7);
    double f = f_ds(t.back());
    u.push_back(std::pow(cplx(f), -cplx(0, 1) * 1.0 + p.alpha()) * wm + std::pow(cplx(f), cplx(0, 1) * 1.0 + p.alpha()) * wp);
  }
  FitResult r = fit_f_asymptotics(t, u, p);
  CHECK_ABS(r.w_minus, wm, 1e-10);
  CHECK_ABS(r.w_plus, wp, 1e-10);
  CHECK(r.residual < 1e-12);
  CHECK_ABS(f_ds(0.7), 1 / std::sqrt(std::cosh(1.4)), 1e-15);
}

TEST_CASE("data conversion") {
  ModelParams p(2, 1.0);
  RulePtr r = sphere_rule(p, 32);
  BoundaryFunction z = BoundaryFunction::zero(r);
  AsymptoticData v = rho_from_f(FAsymptotics{z, z}, p);
  CHECK(l2_norm(v.v_plus) == 0.0);
  CHECK(l2_norm(v.v_minus) == 0.0);
  CHECK(to_string(kDefaultOrdering) == "swapped");
}

TEST_CASE("reconstruction") {
  ModelParams p(2, 1.0);
  RulePtr r = sphere_rule(p, 32);
  BoundaryFunction z1 = zonal_basis(1, make_direction(circle(0.0)), r);
  Reconstruction zero(AsymptoticData::zero(r), p);
  Point x = ds_chart(0.6, circle(0.9));
  CHECK(zero(x) == cplx(0));
  Reconstruction u(AsymptoticData(z1 * a_of_nu(p), BoundaryFunction::zero(r)), p);
  CHECK_REL(u(x), WavePacket(z1, Sign::PLUS, p.lam_plus(), p)(x), 1e-13);
}

TEST_CASE("round trip through the boundary data") {
  ModelParams p(2, 1.0);
  RulePtr r = sphere_rule(p, 64);
  BoundaryFunction a = zonal_basis(0, make_direction(circle(0.0)), r) + zonal_basis(2, make_direction(circle(0.5)), r);
  BoundaryFunction b = zonal_basis(1, make_direction(circle(2.0)), r) * cplx(0.2, 0.6);
  AsymptoticData v(a, b);
  RhoExtraction ex = extract_rho(slice_of(Reconstruction(v, p)), r, p);
  CHECK(rel_l2(ex.data.v_plus, a) < 1e-3);
  CHECK(rel_l2(ex.data.v_minus, b) < 1e-3);
}

TEST_CASE("positive frequency packets carry one component") {
  ModelParams p(2, 1.0);
  RulePtr r = sphere_rule(p, 64);
  BoundaryFunction psi = zonal_basis(1, make_direction(circle(0.3)), r) + zonal_basis(0, make_direction(circle(0.0)), r);
  WavePacket u(psi, Sign::PLUS, p.lam_plus(), p);
  AsymptoticData d = extract_rho(slice_of(u), r, p).data;
  CHECK(rel_l2(d.v_plus, psi * a_of_nu(p)) < 1e-3);
  CHECK(l2_norm(d.v_minus) < 1e-3 * l2_norm(d.v_plus));

  // a real solution has both components
  FieldEvaluator re{[&](const Point& x) { return u(x) + std::conj(u(x)); }, p, "real"};
  AsymptoticData dr = extract_rho(re, r, p).data;
  CHECK(l2_norm(dr.v_plus) > 1e-2 * l2_norm(d.v_plus));
  CHECK(l2_norm(dr.v_minus) > 1e-2 * l2_norm(d.v_plus));
}

TEST_CASE("ordering calibration") {
  OrderingCalibration c = calibrate_ordering(ModelParams(2, 1.0));
  CHECK(c.unique);
  CHECK(c.chosen == RhoOrdering::SWAPPED);
  CHECK(c.defect_swapped < 1e-4);
  CHECK(c.defect_printed > 1e-1);
}

TEST_CASE("q pairing") {
  ModelParams p(2, 1.0);
  RulePtr r = sphere_rule(p, 16);
  BoundaryFunction z0 = zonal_basis(0, make_direction(circle(0.0)), r);
  AsymptoticData plus(z0, BoundaryFunction::zero(r)), minus(BoundaryFunction::zero(r), z0);
  CMat2 q = q_matrix(p);
  double m = omega_mass(2);
  CHECK_REL(q_pairing(plus, plus, p), q(0, 0) * m, 1e-13);
  CHECK_REL(q_pairing(minus, minus, p), q(1, 1) * m, 1e-13);
  CHECK_ABS(q_pairing(plus, minus, p), cplx(0), 1e-15);
}

TEST_CASE("inversion identity in harmonic form") {
  ModelParams p(2, 1.0);
  CHECK(inv_identity_check(p, 0.3).defect < 1e-3);
  InvExtrapolation e = inv_identity_extrapolated(p);
  CHECK(e.defect_extrapolated < 5e-3);
}

TEST_CASE("symplectic identity is antisymmetric") {
  ModelParams p(2, 1.0);
  TwoPointTable T(p);
  Bump f1, f2;
  f1.w0 = circle(0.0);
  f2.t0 = 0.9;
  f2.w0 = circle(0.2);
  SymplecticOptions opt;
  opt.rule_order = 48;
  SymplecticResult a = symplectic_check(f1, f2, T, opt), b = symplectic_check(f2, f1, T, opt);
  CHECK(a.defect < 2e-3);
  // the two orders use different nested grids, so they agree to quadrature accuracy
  CHECK_ABS(b.rhs, -a.rhs, 1e-5 * std::abs(a.rhs));
  CHECK_ABS(b.lhs, -a.lhs, 5e-3 * std::abs(a.lhs));
  Bump none = f2;
  none.amp = 0.0;
  SymplecticResult z = symplectic_check(f1, none, T, opt);
  CHECK(z.lhs == cplx(0));
  CHECK(z.rhs == cplx(0));
}
