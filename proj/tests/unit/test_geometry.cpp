#include <cmath>

#include "dsbd/geometry.hpp"
#include "test_util.hpp"

using namespace dsbd;

namespace {

Vec v4(double a, double b, double c, double d) {
  Vec v(4);
  v << a, b, c, d;
  return v;
}

}  // namespace

TEST_CASE("minkowski product") {
  CHECK(mink_dot(v4(1, 0, 0, 0), v4(1, 0, 0, 0)) == 1.0);
  CHECK_ABS(mink_dot(v4(0, 0, 0, 1), v4(1, 0, 0, 1) / std::sqrt(2.0)), -1 / std::sqrt(2.0), 1e-15);
  for (int k = 0; k < 100; ++k) {
    Vec x = random_unit(2 * k, 4) * 1.7, y = random_unit(2 * k + 1, 4);
    CHECK(mink_dot(x, y) == mink_dot(y, x));
  }
  CHECK_THROWS_AS(mink_dot(v4(1, 0, 0, 0), Vec::Zero(3)), ArgumentError);
}

TEST_CASE("point classification") {
  Point a = make_point(v4(0, 0, 0, 1));
  CHECK(a.region == Region::DS);
  CHECK_ABS(a.rho, 1.0, 1e-15);
  CHECK_ABS(a.r, 1.0, 1e-15);
  CHECK_ABS(a.mu, -1.0, 1e-15);
  CHECK_ABS(a.f, 1.0, 1e-15);
  Point b = make_point(v4(2, 0, 0, 0));
  CHECK(b.region == Region::H_PLUS);
  CHECK_ABS(b.mu, 1.0, 1e-15);
  CHECK(make_point(v4(-2, 0, 0, 0)).region == Region::H_MINUS);
  Point c = make_point(v4(1, 0, 0, 1));
  CHECK(c.region == Region::CONE_PLUS);
  CHECK_ABS(c.mu, 0.0, 1e-15);
  CHECK_ABS(c.f, 0.0, 1e-15);
  CHECK_THROWS_AS(make_point(Vec::Zero(4)), DegeneratePointError);
}

TEST_CASE("sphere representatives") {
  Point a = to_sphere(make_point(v4(0, 0, 0, 2)));
  CHECK((a.coords - v4(0, 0, 0, 1)).norm() < 1e-15);
  Point b = to_sphere(make_point(v4(2, 0, 0, 0)));
  CHECK((b.coords - v4(1, 0, 0, 0)).norm() < 1e-15);
  for (double t : {-1.3, 0.2, 2.0}) {
    Point x = ds_chart(t, random_unit(7, 3));
    Point s = to_sphere(x);
    CHECK((s.coords - x.f * x.coords).norm() < 1e-14);
  }
}

TEST_CASE("charts") {
  Point p0 = ds_chart(0.0, Vec::Unit(2, 1));
  CHECK((p0.coords - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
  CHECK_ABS(p0.mu, -1.0, 1e-15);
  Point p1 = ds_chart(1.0, Vec::Unit(3, 2));
  CHECK((p1.coords - v4(std::sinh(1.0), 0, 0, std::cosh(1.0))).norm() < 1e-15);
  for (double t : {0.5, 1.0, 2.0}) CHECK_ABS(ds_chart(t, random_unit(3, 3)).mu, -1 / std::cosh(2 * t), 1e-14);
  CHECK((hyp_chart(0.0, Vec::Unit(3, 0), Sign::PLUS).coords - v4(1, 0, 0, 0)).norm() < 1e-15);
  CHECK((hyp_chart(0.0, Vec::Unit(3, 0), Sign::MINUS).coords - v4(-1, 0, 0, 0)).norm() < 1e-15);
  for (double s : {0.3, 1.1}) CHECK_ABS(hyp_chart(s, random_unit(4, 3), Sign::PLUS).mu, 1 / std::cosh(2 * s), 1e-14);
}

TEST_CASE("boundary limits") {
  BoundaryDirection b = xi_limit(make_point(v4(1, 0, 0, 2)), Sign::PLUS);
  CHECK((b.xi_hat - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
  Vec w = random_unit(12, 3);
  CHECK((xi_limit(ds_chart(0.7, w), Sign::PLUS).xi_hat - w).norm() < 1e-14);
  for (int k = 0; k < 10; ++k) {
    Vec u = random_unit(100 + k, 3);
    double lhs = mink_dot(b.embedded, make_direction(u).embedded);
    CHECK_ABS(lhs, 0.25 * (b.xi_hat - u).squaredNorm(), 1e-15);
  }
}

TEST_CASE("lorentz maps") {
  LorentzMap a = random_lorentz(5, 0.8, 3), b = random_lorentz(5, 0.8, 3);
  CHECK(a.matrix == b.matrix);
  for (int k = 0; k < 100; ++k) {
    Vec x = random_unit(3 * k, 4) * 2, y = random_unit(3 * k + 1, 4);
    CHECK_ABS(mink_dot(a.apply(x), a.apply(y)), mink_dot(x, y), 1e-12);
  }
  LorentzMap r = random_lorentz(9, 0.0, 3);
  CHECK_ABS(r.matrix(0, 0), 1.0, 1e-15);
  CHECK((r.matrix.transpose() * r.matrix - Mat::Identity(4, 4)).norm() < 1e-14);
}
