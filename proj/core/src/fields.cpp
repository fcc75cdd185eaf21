#include "dsbd/fields.hpp"

#include <cmath>

#include "dsbd/special.hpp"

namespace dsbd {

cplx plane_wave(const Point& x, const BoundaryDirection& xi, Sign sign, cplx exponent, double eps) {
  if (x.coords.size() != xi.embedded.size()) throw ArgumentError("plane_wave: dimension mismatch");
  double a = mink_dot(x.coords, xi.embedded);
  if (eps > 0) return reg_power(a, exponent, sign, eps);
  return branch_power(a, exponent, sign);
}

WavePacket::WavePacket(BoundaryFunction v, Sign sign, cplx exponent, ModelParams p, PacketOptions opt)
    : v_(std::move(v)), sign_(sign), exponent_(exponent), p_(p), opt_(std::move(opt)) {
  if (!v_.rule) throw ArgumentError("WavePacket: profile without rule");
  if (v_.rule->d != p_.d) throw ArgumentError("WavePacket: rule dimension differs from model");
  L_ = opt_.band_limit >= 0 ? std::min(opt_.band_limit, v_.rule->band_limit) : v_.rule->band_limit;
  zero_ = v_.values.cwiseAbs().maxCoeff() == 0.0;
}

std::vector<cplx> WavePacket::radial(double x0, double R, double xx) const {
  return radial_transform(p_.d, x0, R, xx, exponent_, sign_, L_, opt_.graded);
}

PacketValue WavePacket::evaluate(const Point& x) const {
  PacketValue out;
  if (x.dim() != p_.d) throw ArgumentError("WavePacket: point dimension mismatch");
  if (zero_) return out;
  if (opt_.route == Route::EPSILON) {
    EpsKernel k = [&](const BoundaryDirection& xi, double eps) {
      return plane_wave(x, xi, sign_, exponent_, eps);
    };
    Extrapolated e = kernel_integral_extrapolated(k, v_, opt_.eps_schedule);
    out.value = e.value;
    out.error = e.error;
    out.monotone = e.monotone;
    return out;
  }
  std::vector<cplx> phi = radial(x.x0, x.R, x.xx);
  Vec dir = x.R > 0 ? x.spatial_dir() : Vec::Unit(p_.d, 0);
  CVec proj = project_degrees(v_, L_, dir);
  cplx s = 0;
  for (int l = 0; l <= L_; ++l) s += phi[l] * proj[l];
  out.value = s;
  return out;
}

cplx WavePacket::operator()(const Point& x) const { return evaluate(x).value; }

CVec WavePacket::on_ds_slice(double t, const Mat& dirs) const {
  CVec out = CVec::Zero(dirs.cols());
  if (zero_) return out;
  std::vector<cplx> phi = radial(std::sinh(t), std::cosh(t), -1.0);
  for (Eigen::Index k = 0; k < dirs.cols(); ++k) {
    CVec proj = project_degrees(v_, L_, dirs.col(k));
    cplx s = 0;
    for (int l = 0; l <= L_; ++l) s += phi[l] * proj[l];
    out[k] = s;
  }
  return out;
}

FieldEvaluator WavePacket::as_field() const {
  WavePacket copy = *this;
  return FieldEvaluator{[copy](const Point& x) { return copy(x); }, p_, "wave_packet"};
}

PacketValue wave_packet(const Point& x, const BoundaryFunction& v, Sign sign, cplx exponent,
                        const ModelParams& p, const PacketOptions& opt) {
  return WavePacket(v, sign, exponent, p, opt).evaluate(x);
}

Mat tangent_frame(const Vec& w) {
  int n = static_cast<int>(w.size());
  Eigen::HouseholderQR<Mat> qr(w / w.norm());
  Mat q = qr.householderQ();
  return q.rightCols(n - 1);
}

cplx sphere_laplacian(const std::function<cplx(const Vec&)>& g, const Vec& omega_hat, double h) {
  Mat frame = tangent_frame(omega_hat);
  cplx g0 = g(omega_hat);
  cplx s = 0;
  double c = std::cos(h), sn = std::sin(h);
  for (Eigen::Index k = 0; k < frame.cols(); ++k) {
    Vec e = frame.col(k);
    s += g(c * omega_hat + sn * e) - 2.0 * g0 + g(c * omega_hat - sn * e);
  }
  return s / (h * h);
}

cplx kg_residual(const FieldEvaluator& u, double t, const Vec& omega_hat, const ModelParams& p,
                 double h) {
  cplx up = u(ds_chart(t + h, omega_hat));
  cplx u0 = u(ds_chart(t, omega_hat));
  cplx um = u(ds_chart(t - h, omega_hat));
  cplx utt = (up - 2.0 * u0 + um) / (h * h);
  cplx ut = (up - um) / (2.0 * h);
  cplx lap = sphere_laplacian([&](const Vec& w) { return u(ds_chart(t, w)); }, omega_hat, h);
  double ch = std::cosh(t);
  cplx m2 = p.alpha() * p.alpha() + p.nu * p.nu;
  return utt + (p.d - 1) * std::tanh(t) * ut - lap / (ch * ch) + m2 * u0;
}

cplx hyp_residual(const FieldEvaluator& u, double s, const Vec& omega_hat, Sign branch,
                  const ModelParams& p, double h) {
  if (s < 0.1) throw DomainError("hyp_residual: s < 0.1 is too close to the chart singularity");
  cplx up = u(hyp_chart(s + h, omega_hat, branch));
  cplx u0 = u(hyp_chart(s, omega_hat, branch));
  cplx um = u(hyp_chart(s - h, omega_hat, branch));
  cplx uss = (up - 2.0 * u0 + um) / (h * h);
  cplx us = (up - um) / (2.0 * h);
  cplx lap =
      sphere_laplacian([&](const Vec& w) { return u(hyp_chart(s, w, branch)); }, omega_hat, h);
  double sh = std::sinh(s);
  cplx m2 = p.alpha() * p.alpha() + p.nu * p.nu;
  return uss + (p.d - 1) / std::tanh(s) * us + lap / (sh * sh) + m2 * u0;
}

}  // namespace dsbd
