#include <cmath>
#include <numbers>

#include "dsbd/special.hpp"
#include "test_util.hpp"

using namespace dsbd;

namespace {
constexpr double kPi = std::numbers::pi;
const cplx I(0, 1);
}  // namespace

// Reference values below were computed with mpmath at 30 digits.

TEST_CASE("complex gamma") {
  CHECK_REL(cgamma(1.0), cplx(1.0), 1e-15);
  CHECK_REL(cgamma(0.5), cplx(std::sqrt(kPi)), 1e-15);
  CHECK_REL(cgamma(I) * cgamma(-I), cplx(0.272029054982133163), 1e-14);
  CHECK_REL(cgamma(cplx(0.3, 0.7)), cplx(0.30968625674374916, -0.85678775293927057), 1e-13);
  CHECK_REL(cgamma(cplx(-1.5, 2.0)), cplx(-0.0018843965411520957, 0.020932721986921831), 1e-12);
  CHECK_REL(clgamma(cplx(5.0, 3.0)), cplx(2.2442467170202177, 4.7140895389049294), 1e-13);
  // recurrence
  cplx z(0.4, -1.3);
  CHECK_REL(cgamma(z + 1.0), z * cgamma(z), 1e-13);
}

TEST_CASE("branch rule") {
  CHECK_REL(branch_power(2.0, 3.0, Sign::PLUS), cplx(8.0), 1e-15);
  CHECK_REL(branch_power(2.0, 3.0, Sign::MINUS), cplx(8.0), 1e-15);
  ModelParams p(3, 1.0);
  CHECK_REL(branch_power(-1.0, p.lam_plus(), Sign::PLUS), cplx(-0.0432139182637722498), 1e-13);
  // (mu +- i0)^{i nu} = mu_+^{i nu} + e^{-+ nu pi} mu_-^{i nu}
  for (double nu : {0.5, 2.0}) {
    cplx pw = std::pow(0.3, I * nu);
    for (Sign s : {Sign::PLUS, Sign::MINUS}) {
      CHECK_REL(branch_power(0.3, I * nu, s), pw, 1e-14);
      CHECK_REL(branch_power(-0.3, I * nu, s), std::exp(-sgn(s) * nu * kPi) * pw, 1e-13);
    }
  }
  CHECK_THROWS_AS(branch_power(0.0, I, Sign::PLUS), SingularPointError);
}

TEST_CASE("regularized powers") {
  CHECK_REL(reg_power(1.0, 2.0, Sign::PLUS, 0.0), cplx(1.0), 1e-15);
  CHECK_REL(reg_power(-1.0, 1.0, Sign::PLUS, 1e-6), cplx(-1.0, 1e-6), 1e-15);
  cplx lam(-1.0, 1.0), lim = branch_power(-0.5, lam, Sign::PLUS);
  double prev = INFINITY;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    double e = std::abs(reg_power(-0.5, lam, Sign::PLUS, eps) - lim);
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("constants a and c") {
  struct Row {
    int d;
    double nu;
    cplx a;
    double aa, c;
  };
  const Row rows[] = {
      {2, 0.5, {2.7888171864690182, 2.4339283679131174}, 13.701508599677182, 0.015857276041301533},
      {2, 1.0, {2.4484155367261406, 0.55853160106870372}, 6.3066961898743247, 0.0034324444575699641},
      {2, 2.0, {1.5223632363368253, -0.90775808557926258}, 3.1416145652844605, 0.00014860585260669509},
      {3, 0.5, {4.2685086432601786, 11.819200665859045}, 157.91367041742974, 0.0013758695081497317},
      {3, 1.0, {4.0147121031905461, 4.8332705627610768}, 39.478417604357434, 0.00054833465209918655},
      {3, 2.0, {3.0882727275509376, 0.57634708410336479}, 9.8696044010893586, 4.7303041952135287e-5},
  };
  for (const Row& r : rows) {
    ModelParams p(r.d, r.nu);
    CAPTURE(r.d);
    CAPTURE(r.nu);
    CHECK_REL(a_of_nu(p), r.a, 1e-13);
    CHECK_REL(a_of_minus_nu(p), std::conj(r.a), 1e-13);
    cplx aa = a_of_nu(p) * a_of_minus_nu(p);
    CHECK_REL(aa, cplx(r.aa), 1e-13);
    CHECK_REL(c_of(p), cplx(r.c), 1e-13);
    CHECK(std::abs(c_of(p).imag()) < 1e-15 * std::abs(c_of(p)));
  }
  // d = 3, nu = 1 in closed form: 2 pi i 2^{-i}
  CHECK_REL(a_of_nu(ModelParams(3, 1.0)), 2 * kPi * I * std::exp(-I * std::log(2.0)), 1e-14);
  CHECK_REL(a_of_nu(ModelParams(2, 1.0)) * a_of_minus_nu(ModelParams(2, 1.0)),
            cplx(2 * kPi / std::tanh(kPi)), 1e-14);
  CHECK_REL(c_of(ModelParams(3, 1.0)), cplx(kPi / std::sinh(kPi) / (16 * kPi * kPi * kPi)), 1e-14);
}

TEST_CASE("q matrix") {
  for (int d : {2, 3})
    for (double nu : {0.5, 1.0, 2.0}) {
      CMat2 q = q_matrix(ModelParams(d, nu));
      CHECK(q(0, 1) == cplx(0));
      CHECK(q(1, 0) == cplx(0));
      CHECK(q(0, 0).real() < 0);
      CHECK(q(1, 1).real() > 0);
      CMat2 qm = q_matrix(ModelParams(d, -nu));
      CHECK_REL(qm(0, 0), -q(1, 1), 1e-13);
      CHECK_REL(qm(1, 1), -q(0, 0), 1e-13);
    }
}
