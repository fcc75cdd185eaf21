#include "dsbd/geometry.hpp"

#include <cmath>
#include <random>

namespace dsbd {

namespace {
constexpr double kConeTol = 1e-13;
}

ModelParams::ModelParams(int d_, double nu_) : d(d_), nu(nu_) {
  if (d < 2) throw ArgumentError("ModelParams: d must be >= 2");
  if (nu_ == 0.0) throw PoleError("ModelParams: nu must be nonzero");
}

ModelParams ModelParams::continued(int d_, cplx nu_) {
  if (d_ < 2) throw ArgumentError("ModelParams: d must be >= 2");
  if (nu_ == cplx(0)) throw PoleError("ModelParams: nu must be nonzero");
  ModelParams p;
  p.d = d_;
  p.nu = nu_;
  p.continuation = true;
  return p;
}

void ModelParams::require_real() const {
  if (nu.imag() != 0.0 && !continuation)
    throw ArgumentError("complex nu requires continuation mode");
}

std::string to_string(Region r) {
  switch (r) {
    case Region::DS: return "DS";
    case Region::H_PLUS: return "H_PLUS";
    case Region::H_MINUS: return "H_MINUS";
    case Region::CONE_PLUS: return "CONE_PLUS";
    case Region::CONE_MINUS: return "CONE_MINUS";
    case Region::ORIGIN: return "ORIGIN";
  }
  return "?";
}

Vec Point::spatial_dir() const {
  if (R == 0.0) throw DomainError("point has zero spatial part");
  return spatial() / R;
}

double mink_dot(const Vec& x, const Vec& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ArgumentError("mink_dot: length mismatch");
  double s = x[0] * y[0];
  for (Eigen::Index i = 1; i < x.size(); ++i) s -= x[i] * y[i];
  return s;
}

Point make_point(const Vec& coords, double xx_exact) {
  if (coords.size() < 3) throw ArgumentError("make_point: need d >= 2");
  Point p;
  p.coords = coords;
  p.x0 = coords[0];
  p.R = coords.tail(coords.size() - 1).norm();
  p.rho = coords.norm();
  if (p.rho == 0.0) throw DegeneratePointError("make_point: zero vector");
  p.xx = xx_exact;
  p.mu = xx_exact / (p.rho * p.rho);
  p.r = std::sqrt(std::abs(xx_exact));
  p.f = std::sqrt(std::abs(p.mu));
  if (std::abs(p.mu) < kConeTol) {
    p.region = p.x0 > 0 ? Region::CONE_PLUS : Region::CONE_MINUS;
  } else if (p.mu < 0) {
    p.region = Region::DS;
  } else {
    p.region = p.x0 > 0 ? Region::H_PLUS : Region::H_MINUS;
  }
  return p;
}

Point make_point(const Vec& coords) {
  if (coords.size() < 3) throw ArgumentError("make_point: need d >= 2");
  // (x0 - R)(x0 + R) loses less than x0^2 - R^2 near the cone
  double x0 = coords[0];
  double R = coords.tail(coords.size() - 1).norm();
  return make_point(coords, (x0 - R) * (x0 + R));
}

Point to_sphere(const Point& x) {
  Point p = make_point(x.coords / x.rho, x.xx / (x.rho * x.rho));
  p.region = x.region;
  return p;
}

BoundaryDirection make_direction(const Vec& xi_hat) {
  double n = xi_hat.norm();
  if (n == 0.0) throw ArgumentError("make_direction: zero vector");
  BoundaryDirection b;
  b.xi_hat = xi_hat / n;
  b.embedded.resize(xi_hat.size() + 1);
  b.embedded[0] = 1.0;
  b.embedded.tail(xi_hat.size()) = b.xi_hat;
  b.embedded /= std::sqrt(2.0);
  return b;
}

Point ds_chart(double t, const Vec& omega_hat) {
  Vec c(omega_hat.size() + 1);
  c[0] = std::sinh(t);
  c.tail(omega_hat.size()) = std::cosh(t) * omega_hat;
  return make_point(c, -1.0);
}

Point hyp_chart(double s, const Vec& omega_hat, Sign branch) {
  Vec c(omega_hat.size() + 1);
  c[0] = sgn(branch) * std::cosh(s);
  c.tail(omega_hat.size()) = std::sinh(s) * omega_hat;
  return make_point(c, 1.0);
}

BoundaryDirection xi_limit(const Point& x, Sign side) {
  if (x.R == 0.0) throw DomainError("xi_limit: spatial part is zero");
  if (sgn(side) * x.x0 <= 0.0 && x.region != Region::DS)
    throw DomainError("xi_limit: point not on the requested side");
  return make_direction(x.spatial_dir());
}

Point LorentzMap::apply(const Point& p) const {
  return make_point(matrix * p.coords, p.xx);
}

Vec random_unit(std::uint64_t seed, int n) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v[i] = g(gen);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

LorentzMap random_lorentz(std::uint64_t seed, double rapidity_bound, int d) {
  if (!(rapidity_bound >= 0)) throw ArgumentError("random_lorentz: bound < 0");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);

  Mat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = g(gen);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  Mat rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (rr(j, j) < 0) q.col(j) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;

  Vec n(d);
  for (int i = 0; i < d; ++i) n[i] = g(gen);
  n /= n.norm();
  double phi = rapidity_bound * u(gen);

  Mat boost = Mat::Identity(d + 1, d + 1);
  boost(0, 0) = std::cosh(phi);
  for (int i = 0; i < d; ++i) {
    boost(0, i + 1) = boost(i + 1, 0) = std::sinh(phi) * n[i];
    for (int j = 0; j < d; ++j) boost(i + 1, j + 1) += (std::cosh(phi) - 1.0) * n[i] * n[j];
  }
  Mat rot = Mat::Identity(d + 1, d + 1);
  rot.bottomRightCorner(d, d) = q;

  LorentzMap m;
  m.matrix = rot * boost;
  return m;
}

}  // namespace dsbd
