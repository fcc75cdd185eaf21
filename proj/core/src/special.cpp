#include "dsbd/special.hpp"

#include <cmath>
#include <numbers>

namespace dsbd {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

// Lanczos, g = 7, n = 9
constexpr double kG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lanczos_log(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
  cplx t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

void check_pole(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real()))
    throw PoleError("cgamma: pole at non-positive integer");
}

}  // namespace

cplx clgamma(cplx z) {
  check_pole(z);
  if (z.real() < 0.5) {
    // log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
    return std::log(kPi) - std::log(std::sin(kPi * z)) - lanczos_log(1.0 - z);
  }
  return lanczos_log(z);
}

cplx cgamma(cplx z) {
  check_pole(z);
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * std::exp(lanczos_log(1.0 - z)));
  return std::exp(lanczos_log(z));
}

cplx branch_power_log(double log_abs, bool negative, cplx lambda, Sign sign) {
  cplx v = std::exp(lambda * log_abs);
  if (negative) v *= std::exp(sgn(sign) * I * kPi * lambda);
  return v;
}

cplx branch_power(double a, cplx lambda, Sign sign) {
  if (a == 0.0) throw SingularPointError("branch_power: argument is exactly zero");
  return branch_power_log(std::log(std::abs(a)), a < 0, lambda, sign);
}

cplx reg_power(double a, cplx lambda, Sign sign, double eps) {
  if (!(eps > 0.0)) return branch_power(a, lambda, sign);
  return std::exp(lambda * std::log(cplx(a, sgn(sign) * eps)));
}

namespace {
cplx a_impl(int d, cplx nu) {
  double alpha = 0.5 * (d - 1);
  cplx inu = I * nu;
  return std::pow(2.0 * kPi, alpha) * std::exp(-inu * std::log(2.0)) *
         std::exp(clgamma(-inu) - clgamma(-inu + alpha));
}
}  // namespace

cplx a_of_nu(const ModelParams& p) { return a_impl(p.d, p.nu); }

cplx a_of_minus_nu(const ModelParams& p) { return a_impl(p.d, -p.nu); }

cplx c_of(const ModelParams& p) {
  double alpha = p.alpha();
  cplx inu = I * p.nu;
  return cgamma(inu + alpha) * cgamma(-inu + alpha) /
         (std::pow(2.0, p.d + 1) * std::pow(kPi, p.d));
}

CMat2 q_matrix(const ModelParams& p) {
  cplx den = c_of(p) * a_of_nu(p) * a_of_minus_nu(p);
  cplx e = std::exp(p.nu * kPi);
  CMat2 q = CMat2::Zero();
  q(0, 0) = -1.0 / (e * den);
  q(1, 1) = e / den;
  return q;
}

}  // namespace dsbd
