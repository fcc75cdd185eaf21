#pragma once

#include <functional>
#include <vector>

#include "dsbd/fields.hpp"
#include "dsbd/quadrature.hpp"
#include "dsbd/singular.hpp"

namespace dsbd {

struct KernelOptions {
  Route route = Route::SPECTRAL;
  std::vector<double> eps_schedule;  // empty: resolved by the rule
  int eps_rule_order = 0;  // node rule for the epsilon route; 0: 2048 (d = 2) or 512 (d = 3)
  GradedOptions graded;
};

struct KernelValue {
  cplx value = 0;
  double error = 0;
  bool monotone = true;
};

// Lambda^+(x, y) = c e^{-nu pi} int omega (x^- . xi)^{i nu - alpha} (xi . y^+)^{-i nu - alpha},
// Lambda^-(x, y) = c e^{+nu pi} int omega (x^+ . xi)^{i nu - alpha} (xi . y^-)^{-i nu - alpha}.
KernelValue lambda_ds(const Point& x, const Point& y, Sign sign, const ModelParams& p,
                      const KernelOptions& opt = {});

// The same boundary integral with the sphere representatives of x and y; the
// points may lie in any region of S^d.
KernelValue lambda_sphere(const Point& x, const Point& y, Sign sign, const ModelParams& p,
                          const KernelOptions& opt = {});

// E = (Lambda^+ - Lambda^-)/i
KernelValue causal_e(const Point& x, const Point& y, const ModelParams& p,
                     const KernelOptions& opt = {});

// Lambda^+ depends on x and y only through z = x.y and, for timelike pairs,
// the time ordering. The table interpolates the direct kernel piecewise in
// s = log|1 + z| (Chebyshev on panels), separately for spacelike pairs and
// for x in the future of y; Lambda^+(y, x) = conj Lambda^+(x, y) and
// Lambda^- = conj Lambda^+ give the rest. Outside [s_lo, s_hi] the direct
// kernel is used.
class TwoPointTable {
 public:
  explicit TwoPointTable(const ModelParams& p, double s_lo = -20, double s_hi = 8,
                         double panel = 2.0, int degree = 16, const GradedOptions& opt = {});

  cplx lambda(const Point& x, const Point& y, Sign sign) const;
  cplx causal(const Point& x, const Point& y) const;  // E = (Lambda^+ - Lambda^-)/i
  const ModelParams& params() const { return p_; }

 private:
  struct Branch {
    std::vector<std::vector<cplx>> coef;  // per panel
  };
  cplx lambda_plus(const Point& x, const Point& y) const;
  cplx eval(const Branch& b, double s) const;
  Branch build(bool timelike) const;

  ModelParams p_;
  GradedOptions opt_;
  double s_lo_, s_hi_, panel_;
  int degree_, panels_;
  Branch space_, time_;
};

enum class SDirection { FORWARD, INVERSE };

// Eigenvalues of S (FORWARD, kernel (xi.xi')^{i nu - alpha}/a(nu)) or S^{-1}
// (INVERSE, kernel (xi.xi')^{-i nu - alpha}/a(-nu)) on degree-l harmonics.
std::vector<cplx> smatrix_eigenvalues(const ModelParams& p, SDirection dir, int L,
                                      const GradedOptions& opt = {});

BoundaryFunction smatrix_apply(const BoundaryFunction& v, SDirection dir, const ModelParams& p,
                               const KernelOptions& opt = {});

// Epsilon route for S: (xi.xi' + eps)^lambda on the rule's nodes, extrapolated
// with the model A + B eps^{lambda+alpha} + C eps + D eps^{1+lambda+alpha}.
BoundaryFunction smatrix_apply_eps(const BoundaryFunction& v, SDirection dir,
                                   const ModelParams& p, const std::vector<double>& eps_schedule,
                                   std::vector<double>* error = nullptr);

// Epsilon route for the eigenvalues: by rotation invariance the regularized
// kernel (xi.xi' + eps)^lambda acts on degree-l harmonics by a one-dimensional
// integral in the angle theta between xi and xi' (Funk-Hecke), integrated on
// Gauss-Legendre panels graded towards theta = 0 at the scale sqrt(eps), then
// extrapolated eps -> 0 with the same model as smatrix_apply_eps. An empty
// schedule selects 1e-2 * 3^{-k}, k = 0..5.
std::vector<cplx> smatrix_eigenvalues_eps(const ModelParams& p, SDirection dir, int L,
                                          std::vector<double> eps_schedule = {},
                                          std::vector<double>* error = nullptr);

// Compactly supported smooth test function on dS in the chart (t, w):
// amp * exp(1 - 1/(1 - q)) with q = ((t - t0)/a)^2 + (angle(w, w0)/b)^2 < 1.
struct Bump {
  double t0 = 0;
  Vec w0;
  double a = 0.3;
  double b = 0.3;
  double amp = 1.0;

  double operator()(double t, const Vec& w) const;
};

// Quadrature nodes on a bump's support with weights for cosh^{d-1} t dt dOmega
// (the weights already include the bump values).
struct ChartGrid {
  std::vector<Point> points;
  std::vector<cplx> weights;
  std::vector<double> t;
  std::vector<Vec> w;
};

ChartGrid bump_grid(const Bump& f, int d, int nt, int nang);

struct GramResult {
  Eigen::MatrixXcd matrix;         // symmetrized, exactly Hermitian
  double hermiticity_defect = 0;  // |G - G^*| / |G| before symmetrization
  bool coarse = false;            // defect above 1e-4
};

// G_jk = <f_j, Lambda^sign f_k> by nested quadrature with the direct kernel.
// The left argument uses an n_left grid; for d = 2 the inner integral is
// smear_bump with n_right nodes, otherwise an offset n_right grid, so no node
// pair coincides. The Hermiticity defect measures the quadrature error.
GramResult gram_matrix(const std::vector<Bump>& fs, Sign sign, const ModelParams& p,
                       int n_left = 10, int n_right = 11, const KernelOptions& opt = {});

using PairKernel = std::function<cplx(const Point&, const Point&)>;

// Same with any pair kernel (for instance a TwoPointTable).
GramResult gram_matrix(const std::vector<Bump>& fs, int d, const PairKernel& kernel,
                       int n_left = 10, int n_right = 11);

// int K(x, y) f(y) cosh^{d-1} t dt dOmega over the bump's support. For d = 2
// the angular integral at each t is split where y crosses the light cone of x,
// so kernels with a jump or a logarithm there are integrated panelwise.
cplx smear_bump(const Point& x, const Bump& f, const PairKernel& kernel, int nt = 24,
                int nang = 24);

// <f, K g> for chart grids, K(x, y) = kernel(x, y).
cplx double_quadrature(const ChartGrid& f, const ChartGrid& g,
                       const std::function<cplx(const Point&, const Point&)>& kernel);

}  // namespace dsbd
