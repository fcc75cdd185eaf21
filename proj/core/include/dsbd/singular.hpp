#pragma once

#include <functional>
#include <vector>

#include "dsbd/geometry.hpp"

namespace dsbd {

// Panel layout for the log-graded endpoint rule.
struct GradedOptions {
  int gl = 12;             // Gauss-Legendre points per panel
  double decay_budget = 38; // s_max = decay_budget / decay
  double s_min = 10, s_max = 80;
};

// int_0^L G(u) du for a vector-valued G with G(u) ~ h0 u^e as u -> 0.
// With subtract = true the leading term is removed and added back in closed
// form, which is the analytic continuation in e (valid for Re e > -2, e != -1).
// decay is the power of u with which u*(G - h0 u^e) vanishes once u is below
// the inner length scale of G (if any).
using GradedFn = std::function<void(double u, cplx* out)>;
void integrate_graded(const GradedFn& G, double L, cplx e, const cplx* h0, bool subtract,
                      double decay, int n, cplx* acc, const GradedOptions& opt = {},
                      double scale = 0.0);

// The pairing (x . xi) for xi = (1, xi_hat)/sqrt2 as a function of the angle theta
// between xi_hat and the spatial direction of x.
struct ZonalFactor {
  enum Kind { DS, HP, HM, CP, CM, CONST };

  double axis = 0;  // angle of the spatial direction on the circle of integration
  cplx lambda;
  Sign sign = Sign::PLUS;

  Kind kind = CONST;
  double x0 = 0, R = 0;
  double theta_star = 0;  // DS zero
  double gap = 0;         // |x0| - R for H points

  static ZonalFactor make(double x0, double R, double xx, cplx lambda, Sign sign, double axis = 0,
                         double cone_tol = 1e-13);

  // Value of x.xi as (log|v|, v < 0) at angular distance theta in [0, pi].
  void eval(double theta, double& logabs, bool& neg) const;
  cplx power(double theta) const;
};

enum class ArcDomain { CIRCLE, HALF };

// Regular multipliers m_j(phi), j < n.
using MultFn = std::function<void(double phi, cplx* out)>;

// sum_j out_j = int m_j(phi) prod_k F_k(phi) w(phi) dphi, with w = 1 on the circle
// and w = sin^p(phi) on [0, pi]. F_k = (factor_k +- i0)^{lambda_k}.
void arc_integrate(const std::vector<ZonalFactor>& fs, ArcDomain dom, int weight_pow, int n,
                   const MultFn& mult, cplx* out, const GradedOptions& opt = {});

// Phi_l(x; lambda, sign) for l = 0..L: the Funk-Hecke eigenvalues of
// xi_hat -> ((x . xi) +- i0)^lambda, including the omega factor 2^{-alpha}.
// A wave packet is sum_l Phi_l(x) (Pi_l v)(x_hat).
std::vector<cplx> radial_transform(int d, double x0, double R, double xx, cplx lambda, Sign sign,
                                   int L, const GradedOptions& opt = {});

// Eigenvalues kappa_l(lambda) of xi -> int omega(xi') (xi . xi')^lambda v(xi').
std::vector<cplx> cone_eigenvalues(int d, cplx lambda, int L, const GradedOptions& opt = {});

// int omega(xi) ((x . xi) +- i0)^{l1} ((y . xi) +- i0)^{l2} for points x, y with
// nonzero spatial part (d = 2 or 3).
cplx pair_integral(const Point& x, cplx lambda1, Sign s1, const Point& y, cplx lambda2, Sign s2,
                   const GradedOptions& opt = {});

}  // namespace dsbd
