#include <cmath>

#include "dsbd/modes.hpp"
#include "test_util.hpp"

using namespace dsbd;

TEST_CASE("mode integrator contract") {
  ModelParams p(3, 1.0);
  std::vector<double> grid{-1.0, 0.5, 1.0, 2.0};
  ModeSolution s = mode_solve(0, p, 0.0, 1.0, 0.0, grid);
  REQUIRE(s.values.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(mode_residual(s, p, i)) < 1e-8);
  ModeSolution s2 = mode_solve(0, p, 0.0, 2.0, 0.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK_ABS(s2.values[i], 2.0 * s.values[i], 1e-9);
  ModeSolution back = mode_solve(0, p, 2.0, s.values[3], s.derivs[3], {0.0});
  CHECK_ABS(back.values[0], cplx(1.0), 1e-8);
  CHECK_ABS(back.derivs[0], cplx(0.0), 1e-8);
  CHECK_THROWS(mode_solve(0, p, 0.0, 1.0, 0.0, {7.0}));
}

TEST_CASE("mode projections of packets") {
  ModelParams p(2, 1.0);
  RulePtr r = sphere_rule(p, 32);
  Vec ax = Vec::Unit(2, 0);
  BoundaryFunction z1 = zonal_basis(1, make_direction(ax), r);
  SliceFn u = slice_of(WavePacket(z1, Sign::PLUS, p.lam_plus(), p));
  for (int l : {0, 2, 3}) CHECK(std::abs(project_mode(u, l, 0.4, *r, ax)) < 1e-8 * std::abs(project_mode(u, 1, 0.4, *r, ax)));

  // seed the ODE from the projection near t = 0 and compare later
  auto h = [&](double t) { return project_mode(u, 1, t, *r, ax); };
  const double e = 1e-2;
  cplx dh = (h(e) - h(-e)) / (2 * e);
  ModeSolution s = mode_solve(1, p, 0.0, h(0.0), dh, {1.5});
  CHECK_REL(s.values[0], h(1.5), 1e-4);
}

TEST_CASE("synthetic zonal fields project to their radial profile") {
  ModelParams p(2, 1.0);
  RulePtr r = sphere_rule(p, 32);
  Vec ax = Vec::Unit(2, 1);
  FieldEvaluator u{[&](const Point& x) {
                     Vec w = x.spatial_dir();
                     return cplx(std::cosh(x.x0), 0.5) * zonal_poly(2, 2, w.dot(ax));
                   },
                   p, "synthetic"};
  CHECK_ABS(project_mode(u, 2, 0.7, *r, ax), cplx(std::cosh(std::sinh(0.7)), 0.5), 1e-12);
  CHECK_ABS(project_mode(u, 1, 0.7, *r, ax), cplx(0), 1e-12);
}
