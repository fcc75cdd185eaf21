#include "dsbd/modes.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

namespace dsbd {

namespace {

constexpr double kPi = std::numbers::pi;

using State = std::array<double, 4>;  // Re h, Im h, Re h', Im h'

struct ModeRhs {
  int d;
  double ll;  // l(l + d - 2)
  cplx m2;

  void operator()(const State& s, State& ds, double t) const {
    cplx h(s[0], s[1]), hp(s[2], s[3]);
    double ch = std::cosh(t);
    cplx hpp = -(d - 1) * std::tanh(t) * hp - (ll / (ch * ch) + m2) * h;
    ds[0] = s[2];
    ds[1] = s[3];
    ds[2] = hpp.real();
    ds[3] = hpp.imag();
  }
};

ModeRhs make_rhs(int l, const ModelParams& p) {
  return ModeRhs{p.d, double(l) * (l + p.d - 2), p.alpha() * p.alpha() + p.nu * p.nu};
}

// Integrate from t0 through the times in order (monotone, all on one side of t0).
void sweep(const ModeRhs& rhs, double t0, State s, const std::vector<double>& times, double tol,
           std::vector<State>& out) {
  namespace ode = boost::numeric::odeint;
  if (times.empty()) return;
  std::vector<double> ts;
  ts.push_back(t0);
  ts.insert(ts.end(), times.begin(), times.end());
  double dt = times.back() >= t0 ? 1e-3 : -1e-3;
  auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<State>());
  std::vector<State> got;
  try {
    ode::integrate_times(stepper, rhs, s, ts.begin(), ts.end(), dt,
                         [&](const State& x, double) { got.push_back(x); },
                         ode::max_step_checker(200000));
  } catch (const std::exception& e) {
    throw IntegratorError(std::string("mode_solve: ") + e.what());
  }
  out.insert(out.end(), got.begin() + 1, got.end());
}

}  // namespace

ModeSolution mode_solve(int l, const ModelParams& p, double t0, cplx value0, cplx deriv0,
                        const std::vector<double>& t_grid, double tol) {
  if (l < 0) throw ArgumentError("mode_solve: negative degree");
  if (std::abs(t0) > 6.0) throw ArgumentError("mode_solve: t0 outside [-6, 6]");
  for (double t : t_grid)
    if (!(std::abs(t) <= 6.0)) throw ArgumentError("mode_solve: grid outside [-6, 6]");
  ModeRhs rhs = make_rhs(l, p);
  State s0{value0.real(), value0.imag(), deriv0.real(), deriv0.imag()};

  // Sort each side of t0 away from it, integrate, then restore the caller's order.
  std::vector<std::size_t> fwd, bwd;
  for (std::size_t i = 0; i < t_grid.size(); ++i) (t_grid[i] >= t0 ? fwd : bwd).push_back(i);
  std::sort(fwd.begin(), fwd.end(), [&](auto a, auto b) { return t_grid[a] < t_grid[b]; });
  std::sort(bwd.begin(), bwd.end(), [&](auto a, auto b) { return t_grid[a] > t_grid[b]; });
  ModeSolution out;
  out.l = l;
  out.grid = t_grid;
  out.values.resize(t_grid.size());
  out.derivs.resize(t_grid.size());
  for (const auto* side : {&fwd, &bwd}) {
    std::vector<double> ts;
    for (std::size_t i : *side) ts.push_back(t_grid[i]);
    std::vector<State> res;
    sweep(rhs, t0, s0, ts, tol, res);
    for (std::size_t k = 0; k < side->size(); ++k) {
      std::size_t i = (*side)[k];
      out.values[i] = cplx(res[k][0], res[k][1]);
      out.derivs[i] = cplx(res[k][2], res[k][3]);
    }
  }
  return out;
}

cplx mode_residual(const ModeSolution& s, const ModelParams& p, std::size_t index) {
  if (index >= s.grid.size()) throw ArgumentError("mode_residual: index out of range");
  double t = s.grid[index], h = 5e-3;
  std::vector<double> g{t - 2 * h, t - h, t + h, t + 2 * h};
  ModeSolution loc = mode_solve(s.l, p, t, s.values[index], s.derivs[index], g, 1e-12);
  cplx hpp = (loc.derivs[0] - 8.0 * loc.derivs[1] + 8.0 * loc.derivs[2] - loc.derivs[3]) / (12 * h);
  ModeRhs rhs = make_rhs(s.l, p);
  double ch = std::cosh(t);
  cplx pot = (rhs.ll / (ch * ch) + rhs.m2) * s.values[index];
  cplx r = hpp + (p.d - 1) * std::tanh(t) * s.derivs[index] + pot;
  double scale = std::max({std::abs(hpp), std::abs(pot), 1e-300});
  return r / scale;
}

cplx project_mode(const SliceFn& u, int l, double t, const SphereRule& rule, const Vec& axis) {
  if (axis.size() != rule.d) throw ArgumentError("project_mode: axis dimension differs");
  if (l > rule.band_limit) throw ArgumentError("project_mode: rule order too low for degree");
  Vec e = axis / axis.norm();
  CVec vals = u(t, rule.xi);
  std::vector<cplx> num(rule.size());
  std::vector<double> den(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    double z = zonal_poly(rule.d, l, rule.xi.col(static_cast<Eigen::Index>(k)).dot(e));
    num[k] = rule.weights[k] * z * vals[static_cast<Eigen::Index>(k)];
    den[k] = rule.weights[k] * z * z;
  }
  return pairwise_sum(num.data(), num.size()) / pairwise_sum(den.data(), den.size());
}

cplx project_mode(const FieldEvaluator& u, int l, double t, const SphereRule& rule,
                  const Vec& axis) {
  return project_mode(slice_of(u), l, t, rule, axis);
}

cplx project_mode_arcs(const FieldEvaluator& u, int l, double t, const Vec& axis,
                       std::vector<double> splits, int levels, int gl) {
  if (axis.size() != 2) throw ArgumentError("project_mode_arcs: d = 2 only");
  double phi0 = std::atan2(axis[1], axis[0]);
  for (double& s : splits) s = s - 2 * kPi * std::floor(s / (2 * kPi));
  std::sort(splits.begin(), splits.end());
  if (splits.empty()) splits.push_back(0.0);
  const GaussRule& g = gauss_legendre(gl);
  std::vector<cplx> terms;
  auto panel = [&](double a, double b) {
    double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int q = 0; q < gl; ++q) {
      double s = mid + hw * g.x[q];
      Vec w(2);
      w << std::cos(phi0 + s), std::sin(phi0 + s);
      terms.push_back(hw * g.w[q] * std::cos(l * s) * u(ds_chart(t, w)));
    }
  };
  std::size_t n = splits.size();
  for (std::size_t i = 0; i < n; ++i) {
    double a = splits[i];
    double b = i + 1 < n ? splits[i + 1] : splits[0] + 2 * kPi;
    if (b - a <= 0) continue;
    double m = 0.5 * (a + b), half = 0.5 * (b - a);
    // dyadic panels towards both endpoints
    for (int k = 0; k < levels; ++k) {
      double outer = half * std::ldexp(1.0, -k), inner = half * std::ldexp(1.0, -k - 1);
      panel(a + inner, a + outer);
      panel(b - outer, b - inner);
    }
    double tiny = half * std::ldexp(1.0, -levels);
    panel(a, a + tiny);
    panel(b - tiny, b);
    (void)m;
  }
  double norm = l == 0 ? 2 * kPi : kPi;
  return pairwise_sum(terms.data(), terms.size()) / norm;
}

}  // namespace dsbd
