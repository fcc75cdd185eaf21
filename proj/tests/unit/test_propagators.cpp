#include <cmath>

#include "dsbd/propagators.hpp"
#include "test_util.hpp"

using namespace dsbd;

namespace {

Point equator(int d, double theta) {
  Vec w = Vec::Zero(d);
  w[0] = std::cos(theta);
  w[1] = std::sin(theta);
  return ds_chart(0.0, w);
}

Vec circle(double phi) {
  Vec w(2);
  w << std::cos(phi), std::sin(phi);
  return w;
}

}  // namespace

// Kernel references: the Bunch-Davies function of dS_d,
// Gamma(h+)Gamma(h-) / ((4 pi)^{d/2} Gamma(d/2)) 2F1(h+, h-; d/2; (1 + Z)/2),
// h+- = alpha +- i nu, Z = -x.y, evaluated in mpmath. For x in the future of y
// Lambda^+ takes the value below the cut.

TEST_CASE("kernel against the hypergeometric closed form, spacelike") {
  struct Row {
    int d;
    double nu, theta, value;
  };
  const Row rows[] = {
      {2, 1.0, 0.3, 0.227846314440052},  {2, 1.0, 1.0, 0.0792755270015492}, {2, 1.0, 2.0, 0.031883625645211},
      {2, 2.0, 0.3, 0.126077054982545},  {2, 2.0, 1.0, 0.0203672504969585}, {2, 2.0, 2.0, 0.00286875426734937},
      {3, 1.0, 1.0, 0.0343743017001385},
  };
  for (const Row& r : rows) {
    ModelParams p(r.d, r.nu);
    Point x = equator(r.d, 0.0), y = equator(r.d, r.theta);
    CAPTURE(r.d);
    CAPTURE(r.theta);
    for (Sign s : {Sign::PLUS, Sign::MINUS}) CHECK_REL(lambda_ds(x, y, s, p).value, cplx(r.value), 1e-10);
  }
}

TEST_CASE("kernel against the hypergeometric closed form, timelike") {
  ModelParams p(2, 1.0);
  Point x = ds_chart(1.0, circle(0.0)), y = ds_chart(0.0, circle(0.0));
  cplx future(-0.0116220862590438, -0.180518807069844);
  CHECK_REL(lambda_ds(x, y, Sign::PLUS, p).value, future, 1e-10);
  CHECK_REL(lambda_ds(y, x, Sign::PLUS, p).value, std::conj(future), 1e-10);
  CHECK_REL(lambda_ds(x, y, Sign::MINUS, p).value, std::conj(future), 1e-10);
  // E = (Lambda^+ - Lambda^-)/i is real and odd
  cplx e = causal_e(x, y, p).value;
  CHECK_REL(e, cplx(2 * future.imag()), 1e-10);
  CHECK_REL(causal_e(y, x, p).value, -e, 1e-10);
}

TEST_CASE("kernel table") {
  ModelParams p(2, 1.0);
  TwoPointTable T(p);
  for (double th : {0.05, 0.7, 2.5}) {
    Point x = equator(2, 0.0), y = equator(2, th);
    CHECK_REL(T.lambda(x, y, Sign::PLUS), lambda_ds(x, y, Sign::PLUS, p).value, 1e-9);
  }
  for (double t : {0.2, 1.0, 2.5}) {
    Point x = ds_chart(t, circle(0.4)), y = ds_chart(-0.3, circle(0.1));
    for (Sign s : {Sign::PLUS, Sign::MINUS}) CHECK_REL(T.lambda(x, y, s), lambda_ds(x, y, s, p).value, 1e-9);
    CHECK_REL(T.causal(x, y), causal_e(x, y, p).value, 1e-8);
  }
}

TEST_CASE("sphere kernel") {
  ModelParams p(2, 1.0);
  Point x = ds_chart(0.4, circle(0.0)), y = ds_chart(-0.2, circle(1.2));
  cplx want = std::pow(cplx(x.f), p.lam_plus()) * std::pow(cplx(y.f), p.lam_minus()) * lambda_ds(x, y, Sign::PLUS, p).value;
  CHECK_REL(lambda_sphere(x, y, Sign::PLUS, p).value, want, 1e-8);
  // a point of H_+ against a dS point gives a finite value
  cplx h = lambda_sphere(hyp_chart(0.5, circle(0.3), Sign::PLUS), y, Sign::PLUS, p).value;
  CHECK(std::isfinite(std::abs(h)));
}

TEST_CASE("scattering matrix eigenvalues") {
  // Funk-Hecke integrals continued analytically in the exponent (mpmath).
  const cplx d2[] = {{0.41603952592356635, -0.90934653068524662},
                     {-0.9771009401023371, 0.21277629767229489},
                     {-0.17939916372647283, 0.98377636689150151},
                     {0.54855672067496899, 0.83611334411210305}};
  const cplx d3[] = {{-0.76923890136397213, -0.6389612763136348},
                     {-0.6389612763136348, 0.76923890136397213},
                     {0.23201435530299682, 0.97271236186929112},
                     {0.76923890136397213, 0.6389612763136348}};
  for (int d : {2, 3}) {
    ModelParams p(d, 1.0);
    auto fw = smatrix_eigenvalues(p, SDirection::FORWARD, 3);
    auto inv = smatrix_eigenvalues(p, SDirection::INVERSE, 3);
    auto eps = smatrix_eigenvalues_eps(p, SDirection::FORWARD, 3);
    for (int l = 0; l <= 3; ++l) {
      cplx want = d == 2 ? d2[l] : d3[l];
      CAPTURE(d);
      CAPTURE(l);
      CHECK_REL(fw[l], want, 1e-10);
      CHECK_REL(fw[l] * inv[l], cplx(1), 1e-10);
      CHECK_REL(eps[l], want, 1e-5);
    }
  }
}

TEST_CASE("scattering matrix on functions") {
  ModelParams p(2, 1.0);
  RulePtr r = sphere_rule(p, 64);
  BoundaryFunction z2 = zonal_basis(2, make_direction(circle(0.7)), r);
  BoundaryFunction s = smatrix_apply(z2, SDirection::FORWARD, p);
  CHECK(l2_norm(s - z2 * cplx(-0.17939916372647283, 0.98377636689150151)) < 1e-9 * l2_norm(z2));
  BoundaryFunction back = smatrix_apply(s, SDirection::INVERSE, p);
  CHECK(l2_norm(back - z2) < 1e-9 * l2_norm(z2));
}

TEST_CASE("smearing and gram matrices") {
  ModelParams p(2, 1.0);
  TwoPointTable T(p);
  PairKernel k = [&](const Point& x, const Point& y) { return T.lambda(x, y, Sign::PLUS); };
  Bump g;
  g.t0 = 0.2;
  g.w0 = circle(0.4);
  // a point whose light cone cuts the support: graded panels converge in n
  Point x = ds_chart(0.5, circle(0.1));
  cplx a = smear_bump(x, g, k, 24, 24), b = smear_bump(x, g, k, 48, 48), c = smear_bump(x, g, k, 96, 96);
  CHECK(std::abs(b - c) < std::abs(a - c));
  CHECK_REL(b, c, 1e-5);

  Bump f1, f2;
  f1.w0 = circle(0.0);
  f2.t0 = 0.5;
  f2.w0 = circle(1.5);
  GramResult G = gram_matrix({f1, f2}, 2, k, 12, 13);
  CHECK(G.hermiticity_defect < 1e-4);
  CHECK(!G.coarse);
  CHECK(G.matrix(0, 0).real() > 0);
  CHECK(std::abs(G.matrix(0, 0).imag()) < 1e-12 * std::abs(G.matrix(0, 0)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G.matrix);
  CHECK(es.eigenvalues().minCoeff() >= -1e-6 * es.eigenvalues().maxCoeff());
}
