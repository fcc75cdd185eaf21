#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dsbd/geometry.hpp"
#include "dsbd/quadrature.hpp"
#include "dsbd/singular.hpp"

namespace dsbd {

// A solution candidate: a pure map from points to complex values.
struct FieldEvaluator {
  std::function<cplx(const Point&)> fn;
  ModelParams params;
  std::string tag;

  cplx operator()(const Point& x) const { return fn(x); }
};

// (x.xi +- i0)^exponent, or (x.xi +- i eps)^exponent when eps > 0.
cplx plane_wave(const Point& x, const BoundaryDirection& xi, Sign sign, cplx exponent,
                double eps = 0.0);

enum class Route { SPECTRAL, EPSILON };

struct PacketOptions {
  Route route = Route::SPECTRAL;
  std::vector<double> eps_schedule;  // empty: resolved by the rule
  int band_limit = -1;  // -1: the rule's band limit
  GradedOptions graded;
};

struct PacketValue {
  cplx value = 0;
  double error = 0;
  bool monotone = true;
};

// P(x) = int omega(xi) (x.xi +- i0)^exponent v(xi). The spectral route expands v
// in zonal harmonics about x_hat and integrates each radial factor with the
// graded endpoint rule; the epsilon route regularizes on the rule's nodes and
// extrapolates eps -> 0.
class WavePacket {
 public:
  WavePacket(BoundaryFunction v, Sign sign, cplx exponent, ModelParams p, PacketOptions opt = {});

  cplx operator()(const Point& x) const;
  PacketValue evaluate(const Point& x) const;
  // Values at ds_chart(t, w) for every column w of dirs; the radial factors are shared.
  CVec on_ds_slice(double t, const Mat& dirs) const;
  // Radial factors Phi_l for a point with the given invariants.
  std::vector<cplx> radial(double x0, double R, double xx) const;

  const BoundaryFunction& profile() const { return v_; }
  Sign sign() const { return sign_; }
  cplx exponent() const { return exponent_; }
  const ModelParams& params() const { return p_; }
  int band_limit() const { return L_; }
  FieldEvaluator as_field() const;

 private:
  BoundaryFunction v_;
  Sign sign_;
  cplx exponent_;
  ModelParams p_;
  PacketOptions opt_;
  int L_;
  bool zero_;
};

PacketValue wave_packet(const Point& x, const BoundaryFunction& v, Sign sign, cplx exponent,
                        const ModelParams& p, const PacketOptions& opt = {});

// Finite-difference residual of the Klein-Gordon operator on dS in the chart
// (t, w): (d_t^2 + (d-1) tanh t d_t - cosh^-2 t Lap_S + alpha^2 + nu^2) u.
cplx kg_residual(const FieldEvaluator& u, double t, const Vec& omega_hat, const ModelParams& p,
                 double h = 1e-3);

// Same on H_+- in the chart (s, w): (d_s^2 + (d-1) coth s d_s + sinh^-2 s Lap_S
// + alpha^2 + nu^2) u. Throws DomainError for s < 0.1.
cplx hyp_residual(const FieldEvaluator& u, double s, const Vec& omega_hat, Sign branch,
                  const ModelParams& p, double h = 1e-3);

// Geodesic second-difference Laplacian on S^{d-1} of w -> g(w) at omega_hat.
cplx sphere_laplacian(const std::function<cplx(const Vec&)>& g, const Vec& omega_hat, double h);

// Orthonormal basis of the tangent space of S^{d-1} at w (columns).
Mat tangent_frame(const Vec& w);

}  // namespace dsbd
