#pragma once

#include <vector>

#include "dsbd/boundary.hpp"
#include "dsbd/fields.hpp"
#include "dsbd/quadrature.hpp"

namespace dsbd {

// Degree-l mode of a solution on dS: h'' + (d-1) tanh t h' + (l(l+d-2)/cosh^2 t
// + alpha^2 + nu^2) h = 0.
struct ModeSolution {
  int l = 0;
  std::vector<double> grid;
  std::vector<cplx> values;
  std::vector<cplx> derivs;
};

// Adaptive Dormand-Prince integration from (t0, value0, deriv0) to every grid
// point, absolute and relative tolerance tol. Grid points must lie in [-6, 6].
ModeSolution mode_solve(int l, const ModelParams& p, double t0, cplx value0, cplx deriv0,
                        const std::vector<double>& t_grid, double tol = 1e-10);

// Residual of the mode ODE at t for a solution evaluated by five-point differences.
cplx mode_residual(const ModeSolution& s, const ModelParams& p, std::size_t index);

// Amplitude of the degree-l zonal component about axis of w -> u(ds_chart(t, w)):
// int u Z_l(w . axis) dsigma / int Z_l^2 dsigma on the rule's nodes.
cplx project_mode(const FieldEvaluator& u, int l, double t, const SphereRule& rule,
                  const Vec& axis);
cplx project_mode(const SliceFn& u, int l, double t, const SphereRule& rule, const Vec& axis);

// Same for d = 2 with the circle split at the given angles (relative to axis);
// each arc is integrated with Gauss-Legendre panels graded towards both ends,
// so integrable singularities at the splits (logarithms, jumps) are resolved.
cplx project_mode_arcs(const FieldEvaluator& u, int l, double t, const Vec& axis,
                       std::vector<double> splits, int levels = 24, int gl = 12);

}  // namespace dsbd
