#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dsbd/geometry.hpp"

namespace dsbd {

using CVec = Eigen::VectorXcd;

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

double pairwise_sum(const double* v, std::size_t n);
cplx pairwise_sum(const cplx* v, std::size_t n);

// Quadrature on I_+ for the form omega, which restricts to 2^{-alpha} dsigma
// on the unit sphere of directions.
struct SphereRule {
  int d = 2;
  int order = 0;
  int band_limit = 0;  // largest degree L with v * Z_l exact for l, deg v <= L
  std::vector<BoundaryDirection> nodes;
  std::vector<double> weights;
  Mat xi;  // d x N matrix of unit directions

  std::size_t size() const { return nodes.size(); }
};

using RulePtr = std::shared_ptr<const SphereRule>;

RulePtr sphere_rule(const ModelParams& p, int order);
RulePtr sphere_rule(int d, int order);

// FNV-1a over node coordinates rounded to 1e-12, prefixed by (d, order).
std::string rule_fingerprint(const SphereRule& r);

double sphere_area(int n);      // |S^{n-1}| in R^n
double omega_mass(int d);       // 2^{-alpha} |S^{d-1}|

struct BoundaryFunction {
  RulePtr rule;
  CVec values;

  BoundaryFunction() = default;
  BoundaryFunction(RulePtr r, CVec v);
  static BoundaryFunction zero(RulePtr r);
  static BoundaryFunction sample(RulePtr r, const std::function<cplx(const Vec&)>& fn);

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
  BoundaryFunction operator+(const BoundaryFunction& o) const;
  BoundaryFunction operator-(const BoundaryFunction& o) const;
  BoundaryFunction operator*(cplx s) const;
  BoundaryFunction conj() const;
};

cplx integrate(const BoundaryFunction& f);
// omega pairing <f, g> = int conj(f) g omega
cplx inner(const BoundaryFunction& f, const BoundaryFunction& g);
double l2_norm(const BoundaryFunction& f);

// Zonal polynomial normalized to 1 at c = 1: Chebyshev T_l for d = 2,
// Legendre P_l for d = 3.
double zonal_poly(int d, int l, double c);
// All degrees 0..L at once.
void zonal_polys(int d, int L, double c, double* out);
// Dimension factor N_l in the addition theorem: 1 or 2 (d = 2), 2l + 1 (d = 3).
double zonal_multiplicity(int d, int l);

BoundaryFunction zonal_basis(int l, const BoundaryDirection& axis, RulePtr rule);

// Degree-l component of v evaluated at unit direction x:
// (N_l / |S^{d-1}|) int v(xi) Z_l(xi . x) dsigma.
cplx project_degree(const BoundaryFunction& v, int l, const Vec& x);
// All degrees 0..L at x.
CVec project_degrees(const BoundaryFunction& v, int L, const Vec& x);

struct Extrapolated {
  cplx value = 0;
  double error = 0;       // spread of the last two extrapolants
  bool monotone = true;   // successive differences decrease
  std::vector<cplx> samples;
};

// Fit A + sum_j B_j eps^{p_j} through (eps_k, f_k); needs eps.size() == 1 + p.size().
// The error estimate compares with the fit that drops the largest eps and the
// last exponent.
Extrapolated extrapolate(const std::vector<double>& eps, const std::vector<cplx>& f,
                         const std::vector<cplx>& powers);
// Polynomial Richardson in eps (powers 1, 2, ...).
Extrapolated richardson(const std::vector<double>& eps, const std::vector<cplx>& f);

using EpsKernel = std::function<cplx(const BoundaryDirection&, double)>;

// Schedule resolved by the rule: eps_k = c_k * h with h the node spacing, so
// the regularized integrand never varies faster than the nodes can follow.
std::vector<double> default_eps_schedule(const SphereRule& r);

// An empty schedule selects default_eps_schedule.
Extrapolated kernel_integral_extrapolated(const EpsKernel& kernel, const BoundaryFunction& f,
                                          std::vector<double> eps_schedule = {});

}  // namespace dsbd
