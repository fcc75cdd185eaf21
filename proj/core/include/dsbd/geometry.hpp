#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>

#include "dsbd/errors.hpp"

namespace dsbd {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Spacetime dimension d and mass parameter nu. A complex nu is only accepted
// with continuation = true (analytic-continuation tests).
struct ModelParams {
  int d = 2;
  cplx nu = 1.0;
  bool continuation = false;

  ModelParams() = default;
  ModelParams(int d_, double nu_);
  static ModelParams continued(int d_, cplx nu_);

  double alpha() const { return 0.5 * (d - 1); }
  double nu_re() const { return nu.real(); }
  // i*nu - alpha and -i*nu - alpha
  cplx lam_plus() const { return cplx(0, 1) * nu - alpha(); }
  cplx lam_minus() const { return -cplx(0, 1) * nu - alpha(); }
  void require_real() const;
};

enum class Region { DS, H_PLUS, H_MINUS, CONE_PLUS, CONE_MINUS, ORIGIN };

std::string to_string(Region r);

struct Point {
  Vec coords;
  double x0 = 0;   // time component
  double R = 0;    // euclidean norm of the spatial part
  double xx = 0;   // Minkowski square x.x
  double rho = 0;
  double r = 0;
  double mu = 0;
  double f = 0;
  Region region = Region::ORIGIN;

  int dim() const { return static_cast<int>(coords.size()) - 1; }
  Vec spatial() const { return coords.tail(coords.size() - 1); }
  // unit spatial direction; throws DomainError when R == 0
  Vec spatial_dir() const;
};

struct BoundaryDirection {
  Vec xi_hat;
  Vec embedded;
};

struct LorentzMap {
  Mat matrix;
  Vec apply(const Vec& x) const { return matrix * x; }
  Point apply(const Point& p) const;
};

enum class Sign { PLUS, MINUS };

inline double sgn(Sign s) { return s == Sign::PLUS ? 1.0 : -1.0; }
inline Sign flip(Sign s) { return s == Sign::PLUS ? Sign::MINUS : Sign::PLUS; }

double mink_dot(const Vec& x, const Vec& y);

Point make_point(const Vec& coords);
// Same, with x.x supplied exactly (points built from charts).
Point make_point(const Vec& coords, double xx_exact);

Point to_sphere(const Point& x);

BoundaryDirection make_direction(const Vec& xi_hat);

Point ds_chart(double t, const Vec& omega_hat);
Point hyp_chart(double s, const Vec& omega_hat, Sign branch);

BoundaryDirection xi_limit(const Point& x, Sign side);

LorentzMap random_lorentz(std::uint64_t seed, double rapidity_bound, int d);

// Uniformly distributed unit vector in R^n from a seeded generator.
Vec random_unit(std::uint64_t seed, int n);

}  // namespace dsbd
