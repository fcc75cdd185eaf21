#pragma once

#include <Eigen/Dense>
#include <complex>

#include "dsbd/geometry.hpp"

namespace dsbd {

using CMat2 = Eigen::Matrix2cd;

// Exponent +-i*nu - alpha of a plane wave.
struct Charge {
  int s = +1;  // +1: i*nu - alpha, -1: -i*nu - alpha
  cplx lambda(const ModelParams& p) const { return s > 0 ? p.lam_plus() : p.lam_minus(); }
};

cplx cgamma(cplx z);
cplx clgamma(cplx z);  // principal-ish log Gamma, continuous for Re z > 0

// (a +- i0)^lambda
cplx branch_power(double a, cplx lambda, Sign sign);
// (a +- i eps)^lambda on the principal branch
cplx reg_power(double a, cplx lambda, Sign sign, double eps);
// |a|^lambda for a > 0 and |a|^lambda e^{+-i pi lambda} for a < 0, given log|a|
cplx branch_power_log(double log_abs, bool negative, cplx lambda, Sign sign);

cplx a_of_nu(const ModelParams& p);
// a(-nu) with the same d
cplx a_of_minus_nu(const ModelParams& p);
cplx c_of(const ModelParams& p);
CMat2 q_matrix(const ModelParams& p);

}  // namespace dsbd
