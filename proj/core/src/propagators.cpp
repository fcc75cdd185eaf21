#include "dsbd/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dsbd/special.hpp"

namespace dsbd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kConeLevels = 10;  // dyadic panels towards a light-cone crossing

RulePtr eps_rule(const ModelParams& p, const KernelOptions& opt) {
  int order = opt.eps_rule_order > 0 ? opt.eps_rule_order : (p.d == 2 ? 2048 : 512);
  return sphere_rule(p, order);
}

KernelValue boundary_pair(const Point& x, const Point& y, Sign sign, const ModelParams& p,
                          const KernelOptions& opt) {
  if (x.dim() != p.d || y.dim() != p.d) throw ArgumentError("propagator: point dimension mismatch");
  Sign sx = flip(sign), sy = sign;
  cplx pref = c_of(p) * std::exp(-sgn(sign) * p.nu * kPi);
  KernelValue out;
  if (opt.route == Route::EPSILON) {
    RulePtr rule = eps_rule(p, opt);
    EpsKernel k = [&](const BoundaryDirection& xi, double eps) {
      return reg_power(mink_dot(x.coords, xi.embedded), p.lam_plus(), sx, eps) *
             reg_power(mink_dot(xi.embedded, y.coords), p.lam_minus(), sy, eps);
    };
    BoundaryFunction one = BoundaryFunction::sample(rule, [](const Vec&) { return cplx(1.0); });
    Extrapolated e = kernel_integral_extrapolated(k, one, opt.eps_schedule);
    out.value = pref * e.value;
    out.error = std::abs(pref) * e.error;
    out.monotone = e.monotone;
    return out;
  }
  out.value = pref * pair_integral(x, p.lam_plus(), sx, y, p.lam_minus(), sy, opt.graded);
  return out;
}

double arc_angle(const Vec& a, const Vec& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

}  // namespace

KernelValue lambda_ds(const Point& x, const Point& y, Sign sign, const ModelParams& p,
                      const KernelOptions& opt) {
  return boundary_pair(x, y, sign, p, opt);
}

KernelValue lambda_sphere(const Point& x, const Point& y, Sign sign, const ModelParams& p,
                          const KernelOptions& opt) {
  return boundary_pair(to_sphere(x), to_sphere(y), sign, p, opt);
}

KernelValue causal_e(const Point& x, const Point& y, const ModelParams& p,
                     const KernelOptions& opt) {
  KernelValue a = lambda_ds(x, y, Sign::PLUS, p, opt);
  KernelValue b = lambda_ds(x, y, Sign::MINUS, p, opt);
  KernelValue out;
  out.value = (a.value - b.value) / cplx(0, 1);
  out.error = a.error + b.error;
  out.monotone = a.monotone && b.monotone;
  return out;
}

std::vector<cplx> smatrix_eigenvalues(const ModelParams& p, SDirection dir, int L,
                                      const GradedOptions& opt) {
  bool fwd = dir == SDirection::FORWARD;
  cplx lam = fwd ? p.lam_plus() : p.lam_minus();
  cplx a = fwd ? a_of_nu(p) : a_of_minus_nu(p);
  std::vector<cplx> k = cone_eigenvalues(p.d, lam, L, opt);
  for (cplx& v : k) v /= a;
  return k;
}

BoundaryFunction smatrix_apply(const BoundaryFunction& v, SDirection dir, const ModelParams& p,
                               const KernelOptions& opt) {
  if (!v.rule || v.rule->d != p.d) throw ArgumentError("smatrix_apply: rule dimension differs");
  if (opt.route == Route::EPSILON) return smatrix_apply_eps(v, dir, p, opt.eps_schedule);
  int L = v.rule->band_limit;
  std::vector<cplx> ev = smatrix_eigenvalues(p, dir, L, opt.graded);
  CVec out(v.rule->size());
  for (std::size_t j = 0; j < v.rule->size(); ++j) {
    CVec proj = project_degrees(v, L, v.rule->nodes[j].xi_hat);
    cplx s = 0;
    for (int l = 0; l <= L; ++l) s += ev[l] * proj[l];
    out[static_cast<Eigen::Index>(j)] = s;
  }
  return BoundaryFunction(v.rule, out);
}

BoundaryFunction smatrix_apply_eps(const BoundaryFunction& v, SDirection dir,
                                   const ModelParams& p, const std::vector<double>& eps_schedule,
                                   std::vector<double>* error) {
  bool fwd = dir == SDirection::FORWARD;
  cplx lam = fwd ? p.lam_plus() : p.lam_minus();
  cplx a = fwd ? a_of_nu(p) : a_of_minus_nu(p);
  const SphereRule& r = *v.rule;
  std::vector<double> eps = eps_schedule;
  if (eps.empty()) {
    // The kernel varies on the angular scale sqrt(eps).
    for (double e : default_eps_schedule(r)) eps.push_back(e * e);
  }
  if (eps.size() < 3) throw ArgumentError("smatrix_apply_eps: schedule needs at least 3 entries");
  cplx g = lam + p.alpha();
  std::vector<cplx> powers;
  const cplx cand[] = {g, 1.0, g + 1.0, 2.0, g + 2.0, 3.0};
  for (std::size_t k = 0; k + 1 < eps.size() && k < 6; ++k) powers.push_back(cand[k]);
  std::vector<double> eps_fit(eps.begin(), eps.begin() + static_cast<long>(powers.size() + 1));

  std::size_t n = r.size();
  CVec out(static_cast<Eigen::Index>(n));
  if (error) error->assign(n, 0.0);
  std::vector<cplx> terms(n), vals(eps_fit.size());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t e = 0; e < eps_fit.size(); ++e) {
      for (std::size_t k = 0; k < n; ++k) {
        double pr = 0.5 * (1.0 - r.xi.col(j).dot(r.xi.col(k)));
        terms[k] = r.weights[k] * std::exp(lam * std::log(std::max(pr, 0.0) + eps_fit[e])) *
                   v.values[static_cast<Eigen::Index>(k)];
      }
      vals[e] = pairwise_sum(terms.data(), n);
    }
    Extrapolated x = extrapolate(eps_fit, vals, powers);
    out[static_cast<Eigen::Index>(j)] = x.value / a;
    if (error) (*error)[j] = x.error / std::abs(a);
  }
  return BoundaryFunction(v.rule, out);
}

std::vector<cplx> smatrix_eigenvalues_eps(const ModelParams& p, SDirection dir, int L,
                                          std::vector<double> eps, std::vector<double>* error) {
  if (L < 0) throw ArgumentError("smatrix_eigenvalues_eps: negative degree");
  bool fwd = dir == SDirection::FORWARD;
  cplx lam = fwd ? p.lam_plus() : p.lam_minus();
  cplx a = fwd ? a_of_nu(p) : a_of_minus_nu(p);
  if (eps.empty())
    for (int k = 0; k < 6; ++k) eps.push_back(1e-2 * std::pow(3.0, -k));
  if (eps.size() < 3) throw ArgumentError("smatrix_eigenvalues_eps: schedule needs at least 3 entries");
  cplx g = lam + p.alpha();
  std::vector<cplx> powers;
  const cplx cand[] = {g, 1.0, g + 1.0, 2.0, g + 2.0, 3.0};
  for (std::size_t k = 0; k + 1 < eps.size() && k < 6; ++k) powers.push_back(cand[k]);
  eps.resize(powers.size() + 1);

  // omega = 2^{-alpha} dsigma; dsigma = |S^{d-2}| sin^{d-2} theta dtheta for zonal integrands
  double pref = std::pow(2.0, -p.alpha()) * sphere_area(p.d - 1);
  const GaussRule& gr = gauss_legendre(20);
  std::vector<double> zl(static_cast<std::size_t>(L) + 1);
  std::vector<std::vector<cplx>> vals(static_cast<std::size_t>(L) + 1, std::vector<cplx>(eps.size()));
  for (std::size_t e = 0; e < eps.size(); ++e) {
    // dyadic panels in theta from pi down to 1e-4 sqrt(eps), then one panel to 0
    std::vector<double> edges{kPi};
    double stop = 1e-4 * std::sqrt(eps[e]);
    while (edges.back() > stop) edges.push_back(edges.back() * 0.5);
    edges.push_back(0.0);
    std::vector<std::vector<cplx>> terms(static_cast<std::size_t>(L) + 1);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      double hi = edges[k], lo = edges[k + 1];
      double hw = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
      for (int q = 0; q < 20; ++q) {
        double th = mid + hw * gr.x[q];
        double st = std::sin(0.5 * th);
        cplx kern = std::exp(lam * std::log(st * st + eps[e]));
        double jac = hw * gr.w[q] * (p.d == 3 ? std::sin(th) : 1.0);
        zonal_polys(p.d, L, std::cos(th), zl.data());
        for (int l = 0; l <= L; ++l) terms[l].push_back(jac * kern * zl[l]);
      }
    }
    for (int l = 0; l <= L; ++l) vals[l][e] = pref * pairwise_sum(terms[l].data(), terms[l].size());
  }
  std::vector<cplx> out(static_cast<std::size_t>(L) + 1);
  if (error) error->assign(out.size(), 0.0);
  for (int l = 0; l <= L; ++l) {
    Extrapolated x = extrapolate(eps, vals[l], powers);
    out[l] = x.value / a;
    if (error) (*error)[l] = x.error / std::abs(a);
  }
  return out;
}

double Bump::operator()(double t, const Vec& w) const {
  double ang = arc_angle(w, w0);
  double q = std::pow((t - t0) / a, 2) + std::pow(ang / b, 2);
  if (q >= 1.0) return 0.0;
  return amp * std::exp(1.0 - 1.0 / (1.0 - q));
}

ChartGrid bump_grid(const Bump& f, int d, int nt, int nang) {
  if (f.w0.size() != d) throw ArgumentError("bump_grid: center dimension differs from d");
  if (d != 2 && d != 3) throw ArgumentError("bump_grid: d must be 2 or 3");
  if (f.b >= kPi / 2) throw ArgumentError("bump_grid: angular radius must stay below pi/2");
  ChartGrid g;
  const GaussRule& gt = gauss_legendre(nt);
  const GaussRule& ga = gauss_legendre(nang);
  Vec w0 = f.w0 / f.w0.norm();
  auto push = [&](double t, const Vec& w, double wt) {
    double val = f(t, w);
    if (val == 0.0) return;
    g.points.push_back(ds_chart(t, w));
    g.weights.push_back(wt * val * std::pow(std::cosh(t), d - 1));
    g.t.push_back(t);
    g.w.push_back(w);
  };
  for (int i = 0; i < nt; ++i) {
    double t = f.t0 + f.a * gt.x[i];
    double wt = f.a * gt.w[i];
    if (d == 2) {
      double phi0 = std::atan2(w0[1], w0[0]);
      for (int k = 0; k < nang; ++k) {
        double phi = phi0 + f.b * ga.x[k];
        Vec w(2);
        w << std::cos(phi), std::sin(phi);
        push(t, w, wt * f.b * ga.w[k]);
      }
    } else {
      Mat frame = tangent_frame(w0);
      int nb = 2 * nang;
      for (int k = 0; k < nang; ++k) {
        double gam = 0.5 * f.b * (ga.x[k] + 1.0);
        double wg = 0.5 * f.b * ga.w[k] * std::sin(gam);
        for (int m = 0; m < nb; ++m) {
          double beta = 2 * kPi * (m + 0.5 * (k % 2)) / nb;
          Vec w = std::cos(gam) * w0 +
                  std::sin(gam) * (std::cos(beta) * frame.col(0) + std::sin(beta) * frame.col(1));
          push(t, w, wt * wg * 2 * kPi / nb);
        }
      }
    }
  }
  return g;
}

cplx smear_bump(const Point& x, const Bump& f, const PairKernel& kernel, int nt, int nang) {
  int d = x.dim();
  if (d != 2) {
    ChartGrid g = bump_grid(f, d, nt, nang);
    std::vector<cplx> terms(g.points.size());
    for (std::size_t k = 0; k < g.points.size(); ++k) terms[k] = kernel(x, g.points[k]) * g.weights[k];
    return pairwise_sum(terms.data(), terms.size());
  }
  const GaussRule& gt = gauss_legendre(nt);
  const GaussRule& ga = gauss_legendre(nang);
  const GaussRule& gc = gauss_legendre(std::max(6, nang / 3));
  Vec w0 = f.w0 / f.w0.norm();
  double phi0 = std::atan2(w0[1], w0[0]);
  double phix = std::atan2(x.coords[2], x.coords[1]);
  std::vector<cplx> rows;
  std::vector<cplx> cells;
  for (int i = 0; i < nt; ++i) {
    double t = f.t0 + f.a * gt.x[i];
    double half = f.b * std::sqrt(std::max(0.0, 1.0 - gt.x[i] * gt.x[i]));
    if (half <= 0) continue;
    double lo = phi0 - half, hi = phi0 + half;
    std::vector<double> cuts{lo, hi};
    if (x.R > 0) {
      double c = (1.0 + x.x0 * std::sinh(t)) / (x.R * std::cosh(t));
      if (std::abs(c) < 1.0) {
        double del = std::acos(c);
        for (double base : {phix + del, phix - del}) {
          double shifted = base - 2 * kPi * std::round((base - phi0) / (2 * kPi));
          if (shifted > lo && shifted < hi) cuts.push_back(shifted);
        }
      }
    }
    std::size_t n_support = 2;
    std::sort(cuts.begin(), cuts.end());
    double ch = std::cosh(t);
    cells.clear();
    auto panel = [&](double a, double b, const GaussRule& g) {
      if (a > b) std::swap(a, b);
      for (std::size_t m = 0; m < g.x.size(); ++m) {
        double phi = 0.5 * (a + b) + 0.5 * (b - a) * g.x[m];
        Vec w(2);
        w << std::cos(phi), std::sin(phi);
        double val = f(t, w);
        if (val == 0.0) continue;
        cells.push_back(0.5 * (b - a) * g.w[m] * val * kernel(x, ds_chart(t, w)));
      }
    };
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      double a = cuts[k], b = cuts[k + 1];
      if (b - a <= 0) continue;
      // ends at a light-cone crossing carry a logarithm or a jump: grade towards them
      bool ga_cut = cuts.size() > n_support && k > 0;
      bool gb_cut = cuts.size() > n_support && k + 2 < cuts.size();
      if (!ga_cut && !gb_cut) {
        panel(a, b, ga);
        continue;
      }
      double m = 0.5 * (a + b);
      auto graded = [&](double edge, double inner) {
        double len = inner - edge;
        for (int lv = 0; lv < kConeLevels; ++lv)
          panel(edge + len * std::ldexp(1.0, -lv - 1), edge + len * std::ldexp(1.0, -lv), gc);
        panel(edge, edge + len * std::ldexp(1.0, -kConeLevels), gc);
      };
      if (ga_cut) graded(a, m); else panel(a, m, gc);
      if (gb_cut) graded(b, m); else panel(m, b, gc);
    }
    rows.push_back(f.a * gt.w[i] * ch * pairwise_sum(cells.data(), cells.size()));
  }
  return pairwise_sum(rows.data(), rows.size());
}

cplx double_quadrature(const ChartGrid& f, const ChartGrid& g,
                       const std::function<cplx(const Point&, const Point&)>& kernel) {
  std::vector<cplx> rows(f.points.size());
  std::vector<cplx> inner(g.points.size());
  for (std::size_t a = 0; a < f.points.size(); ++a) {
    for (std::size_t b = 0; b < g.points.size(); ++b)
      inner[b] = kernel(f.points[a], g.points[b]) * g.weights[b];
    rows[a] = std::conj(f.weights[a]) * pairwise_sum(inner.data(), inner.size());
  }
  return pairwise_sum(rows.data(), rows.size());
}

GramResult gram_matrix(const std::vector<Bump>& fs, Sign sign, const ModelParams& p,
                       int n_left, int n_right, const KernelOptions& opt) {
  auto kernel = [&](const Point& x, const Point& y) { return lambda_ds(x, y, sign, p, opt).value; };
  return gram_matrix(fs, p.d, kernel, n_left, n_right);
}

GramResult gram_matrix(const std::vector<Bump>& fs, int d, const PairKernel& kernel, int n_left,
                       int n_right) {
  std::size_t n = fs.size();
  std::vector<ChartGrid> left, right;
  for (const Bump& f : fs) {
    left.push_back(bump_grid(f, d, n_left, n_left));
    right.push_back(bump_grid(f, d, n_right, n_right));
  }
  Eigen::MatrixXcd G(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      cplx v;
      if (d == 2) {
        // inner integral split at the light cone; the smeared function is smooth
        std::vector<cplx> rows(left[j].points.size());
        for (std::size_t a = 0; a < rows.size(); ++a)
          rows[a] = std::conj(left[j].weights[a]) *
                    smear_bump(left[j].points[a], fs[k], kernel, n_right, n_right);
        v = pairwise_sum(rows.data(), rows.size());
      } else {
        v = double_quadrature(left[j], right[k], kernel);
      }
      G(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = v;
    }
  GramResult out;
  double norm = G.norm();
  out.hermiticity_defect = norm > 0 ? (G - G.adjoint()).norm() / norm : 0.0;
  out.coarse = out.hermiticity_defect > 1e-4;
  out.matrix = 0.5 * (G + G.adjoint());
  return out;
}

TwoPointTable::TwoPointTable(const ModelParams& p, double s_lo, double s_hi, double panel,
                             int degree, const GradedOptions& opt)
    : p_(p), opt_(opt), s_lo_(s_lo), s_hi_(s_hi), panel_(panel), degree_(degree) {
  if (!(s_hi > s_lo) || panel <= 0 || degree < 2) throw ArgumentError("TwoPointTable: bad layout");
  panels_ = static_cast<int>(std::ceil((s_hi - s_lo) / panel));
  s_hi_ = s_lo_ + panels_ * panel_;
  space_ = build(false);
  time_ = build(true);
}

TwoPointTable::Branch TwoPointTable::build(bool timelike) const {
  int d = p_.d;
  Vec e1 = Vec::Unit(d, 0), e2 = Vec::Unit(d, 1);
  Point y = ds_chart(0.0, e1);
  KernelOptions ko;
  ko.graded = opt_;
  Branch b;
  int n = degree_;
  for (int k = 0; k < panels_; ++k) {
    double a = s_lo_ + k * panel_;
    std::vector<cplx> vals(n);
    for (int j = 0; j < n; ++j) {
      double c = std::cos(kPi * (j + 0.5) / n);
      double s = a + 0.5 * panel_ * (c + 1.0);
      double w = std::exp(s);  // |1 + z|
      Point x;
      if (timelike) {
        x = ds_chart(2.0 * std::asinh(std::sqrt(0.5 * w)), e1);
      } else if (w <= 2.0) {
        double th = 2.0 * std::asin(std::sqrt(0.5 * w));
        x = ds_chart(0.0, std::cos(th) * e1 + std::sin(th) * e2);
      } else {
        x = ds_chart(std::acosh(w - 1.0), -e1);
      }
      vals[j] = lambda_ds(x, y, Sign::PLUS, p_, ko).value;
    }
    std::vector<cplx> coef(n);
    for (int m = 0; m < n; ++m) {
      cplx acc = 0;
      for (int j = 0; j < n; ++j) acc += vals[j] * std::cos(kPi * m * (j + 0.5) / n);
      coef[m] = acc * (m == 0 ? 1.0 : 2.0) / static_cast<double>(n);
    }
    b.coef.push_back(std::move(coef));
  }
  return b;
}

cplx TwoPointTable::eval(const Branch& b, double s) const {
  int k = std::min(panels_ - 1, static_cast<int>((s - s_lo_) / panel_));
  double a = s_lo_ + k * panel_;
  double u = 2.0 * (s - a) / panel_ - 1.0;
  const std::vector<cplx>& c = b.coef[static_cast<std::size_t>(k)];
  cplx b1 = 0, b2 = 0;
  for (int m = degree_ - 1; m >= 1; --m) {
    cplx t = 2.0 * u * b1 - b2 + c[static_cast<std::size_t>(m)];
    b2 = b1;
    b1 = t;
  }
  return u * b1 - b2 + c[0];
}

cplx TwoPointTable::lambda_plus(const Point& x, const Point& y) const {
  if (x.dim() != p_.d || y.dim() != p_.d) throw ArgumentError("TwoPointTable: dimension mismatch");
  Vec diff = x.coords - y.coords;
  double onepz = -0.5 * mink_dot(diff, diff);  // exact form of 1 + x.y on dS
  if (onepz == 0.0) throw SingularPointError("TwoPointTable: null separated pair");
  double s = std::log(std::abs(onepz));
  if (s < s_lo_ || s > s_hi_) {
    KernelOptions ko;
    ko.graded = opt_;
    return lambda_ds(x, y, Sign::PLUS, p_, ko).value;
  }
  if (onepz > 0) return eval(space_, s);
  cplx v = eval(time_, s);
  return diff[0] > 0 ? v : std::conj(v);
}

cplx TwoPointTable::lambda(const Point& x, const Point& y, Sign sign) const {
  cplx v = lambda_plus(x, y);
  return sign == Sign::PLUS ? v : std::conj(v);
}

cplx TwoPointTable::causal(const Point& x, const Point& y) const {
  cplx v = lambda_plus(x, y);
  return (v - std::conj(v)) / cplx(0, 1);
}

}  // namespace dsbd
