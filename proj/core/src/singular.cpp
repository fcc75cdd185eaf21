#include "dsbd/singular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dsbd/quadrature.hpp"
#include "dsbd/special.hpp"

namespace dsbd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);
const cplx I(0.0, 1.0);
constexpr double kMergeTol = 1e-12;

double wrap_pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a > kPi) a -= kTwoPi;
  if (a < -kPi) a += kTwoPi;
  return a;
}

double angdist(double phi, double axis) { return std::abs(wrap_pi(phi - axis)); }

double wrap_2pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a;
}

// exponent of the factor power: lambda*log|v| + (+-i pi lambda if v < 0)
cplx factor_exponent(const ZonalFactor& f, double logabs, bool neg) {
  cplx e = f.lambda * logabs;
  if (neg) e += sgn(f.sign) * I * kPi * f.lambda;
  return e;
}

// Value near the factor's own zero, with signed local offset t:
// DS: theta - theta* = t; CP: theta = |t|; CM: theta = pi - |t|.
void eval_local(const ZonalFactor& f, double t, double& logabs, bool& neg) {
  switch (f.kind) {
    case ZonalFactor::DS: {
      double v1 = std::sin(f.theta_star + 0.5 * t);
      double v2 = std::sin(0.5 * t);
      logabs = std::log(kSqrt2 * f.R) + std::log(std::abs(v1)) + std::log(std::abs(v2));
      neg = (v1 * v2) < 0;
      return;
    }
    case ZonalFactor::CP:
    case ZonalFactor::CM: {
      double s = std::sin(0.5 * t);
      logabs = std::log(kSqrt2 * f.R) + 2.0 * std::log(std::abs(s));
      neg = f.kind == ZonalFactor::CM;
      return;
    }
    default:
      f.eval(std::abs(t), logabs, neg);
  }
}

// Leading behaviour A u^m (with sign) near the factor's zero.
void local_limit(const ZonalFactor& f, int sigma_s, double& logA, bool& neg, int& m) {
  switch (f.kind) {
    case ZonalFactor::DS:
      logA = std::log(f.R * std::sin(f.theta_star) / kSqrt2);
      neg = sigma_s < 0;
      m = 1;
      return;
    case ZonalFactor::CP:
    case ZonalFactor::CM:
      logA = std::log(f.R / (2.0 * kSqrt2));
      neg = f.kind == ZonalFactor::CM;
      m = 2;
      return;
    default:
      throw ArgumentError("local_limit: factor has no zero");
  }
}

struct BreakSpec {
  cplx e = 0;
  bool subtract = false;
  double decay = 1.0;
  double scale = 0.0;  // inner length scale of the integrand near the break, 0 if none
};

// Integrate over consecutive breakpoints. eval(b, s, u, out) gives the
// integrand at pos[b] + s*u, h0(b, s, out) its leading coefficient.
template <class Eval, class H0>
void piecewise_graded(const std::vector<double>& pos, bool periodic, int n,
                      const std::vector<BreakSpec>& spec, Eval&& eval, H0&& h0, cplx* acc,
                      const GradedOptions& opt) {
  std::size_t nb = pos.size();
  std::size_t narcs = periodic ? nb : nb - 1;
  std::vector<cplx> h(n);
  for (std::size_t i = 0; i < narcs; ++i) {
    std::size_t j = (i + 1) % nb;
    double delta = pos[j] - pos[i];
    if (periodic && j == 0) delta += kTwoPi;
    if (delta <= 0) continue;
    double L = 0.5 * delta;
    for (int side = 0; side < 2; ++side) {
      std::size_t b = side == 0 ? i : j;
      int s = side == 0 ? +1 : -1;
      const BreakSpec& sp = spec[b];
      if (sp.subtract) h0(b, s, h.data());
      GradedFn G = [&](double u, cplx* out) { eval(b, s, u, out); };
      integrate_graded(G, L, sp.e, h.data(), sp.subtract, sp.decay, n, acc, opt, sp.scale);
    }
  }
}

BreakSpec spec_for(cplx e, bool known_limit) {
  BreakSpec s;
  s.e = e;
  s.subtract = known_limit && e.real() < 0;
  if (s.subtract && std::abs(e + 1.0) < 1e-10)
    throw SingularPointError("endpoint exponent -1: coinciding singularities (null separation)");
  s.decay = s.subtract ? e.real() + 2.0 : e.real() + 1.0;
  if (s.decay <= 0.05) s.decay = 0.05;
  return s;
}

}  // namespace

void integrate_graded(const GradedFn& G, double L, cplx e, const cplx* h0, bool subtract,
                      double decay, int n, cplx* acc, const GradedOptions& opt, double scale) {
  if (!(L > 0)) return;
  double extra = (scale > 0 && scale < L) ? std::log(L / scale) : 0.0;
  double smax = std::clamp(opt.decay_budget / decay, opt.s_min, opt.s_max) + extra;
  // Below Re e = -1 the subtracted term grows like u^{Re e + 1} and the
  // difference loses digits; stop where that loss meets the truncation error.
  double growth = subtract ? -(e.real() + 1.0) : 0.0;
  if (growth > 0) smax = std::min(smax, std::log(1e16) / (decay + growth) + extra);
  const GaussRule& g = gauss_legendre(opt.gl);
  double logL = std::log(L);
  cplx e1 = e + 1.0;
  std::vector<cplx> buf(n), panel(n);
  auto do_panel = [&](double a, double b) {
    std::fill(panel.begin(), panel.end(), cplx(0));
    double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int q = 0; q < opt.gl; ++q) {
      double s = mid + hw * g.x[q];
      double w = hw * g.w[q];
      double logu = logL - s;
      double u = std::exp(logu);
      G(u, buf.data());
      cplx sub = subtract ? std::exp(e1 * logu) : cplx(0);
      for (int j = 0; j < n; ++j) {
        cplx term = u * buf[j];
        if (subtract) term -= h0[j] * sub;
        panel[j] += w * term;
      }
    }
    for (int j = 0; j < n; ++j) acc[j] += panel[j];
  };
  double s = 0;
  auto run = [&](double until, double width) {
    while (s < until - 1e-12) {
      double b = std::min(until, s + width);
      do_panel(s, b);
      s = b;
    }
  };
  run(std::min(4.0, smax), 0.25);
  run(std::min(12.0, smax), 0.5);
  run(smax, 1.0);
  if (subtract) {
    cplx c = std::exp(e1 * logL) / e1;
    for (int j = 0; j < n; ++j) acc[j] += h0[j] * c;
  }
}

ZonalFactor ZonalFactor::make(double x0, double R, double xx, cplx lambda, Sign sign, double axis,
                              double cone_tol) {
  ZonalFactor f;
  f.axis = axis;
  f.lambda = lambda;
  f.sign = sign;
  f.x0 = x0;
  f.R = R;
  double rho2 = x0 * x0 + R * R;
  if (R <= 1e-300 * std::max(1.0, std::abs(x0))) {
    if (x0 == 0.0) throw DegeneratePointError("ZonalFactor: zero point");
    f.kind = CONST;
  } else if (std::abs(xx) <= cone_tol * rho2) {
    f.kind = x0 > 0 ? CP : CM;
  } else if (xx < 0) {
    f.kind = DS;
    f.theta_star = std::atan2(std::sqrt(-xx), x0);
  } else if (x0 > 0) {
    f.kind = HP;
    f.gap = xx / (x0 + R);
  } else {
    f.kind = HM;
    f.gap = xx / (-x0 + R);
  }
  return f;
}

void ZonalFactor::eval(double theta, double& logabs, bool& neg) const {
  switch (kind) {
    case DS: {
      double v1 = std::sin(0.5 * (theta + theta_star));
      double v2 = std::sin(0.5 * (theta - theta_star));
      logabs = std::log(kSqrt2 * R) + std::log(std::abs(v1)) + std::log(std::abs(v2));
      neg = (v1 * v2) < 0;
      return;
    }
    case HP: {
      double s = std::sin(0.5 * theta);
      logabs = std::log((gap + 2.0 * R * s * s) / kSqrt2);
      neg = false;
      return;
    }
    case CP: {
      double s = std::sin(0.5 * theta);
      logabs = std::log(kSqrt2 * R * s * s);
      neg = false;
      return;
    }
    case HM: {
      double c = std::cos(0.5 * theta);
      logabs = std::log((gap + 2.0 * R * c * c) / kSqrt2);
      neg = true;
      return;
    }
    case CM: {
      double c = std::cos(0.5 * theta);
      logabs = std::log(kSqrt2 * R * c * c);
      neg = true;
      return;
    }
    case CONST:
      logabs = std::log(std::abs(x0) / kSqrt2);
      neg = x0 < 0;
      return;
  }
}

cplx ZonalFactor::power(double theta) const {
  double la;
  bool ng = false;
  eval(theta, la, ng);
  return std::exp(factor_exponent(*this, la, ng));
}

namespace {

struct Zero {
  int k;
  int sigma;
};

struct Break {
  double pos;
  std::vector<Zero> zeros;
  bool weight_zero = false;
  double scale = 0.0;
};

double min_scale(double a, double b) {
  if (a <= 0) return b;
  if (b <= 0) return a;
  return std::min(a, b);
}

double factor_scale(const ZonalFactor& f) {
  switch (f.kind) {
    case ZonalFactor::DS: return 2.0 * std::min(f.theta_star, kPi - f.theta_star);
    case ZonalFactor::HP:
    case ZonalFactor::HM: return std::sqrt(f.gap / f.R);
    default: return 0.0;
  }
}

std::vector<Break> collect_breaks(const std::vector<ZonalFactor>& fs, ArcDomain dom, int p) {
  std::vector<Break> raw;
  auto add = [&](double pos, int k, int sigma, double scale) {
    Break b;
    b.scale = scale;
    if (dom == ArcDomain::CIRCLE) {
      pos = wrap_2pi(pos);
    } else {
      double w = wrap_pi(pos);
      if (w < -kMergeTol || w > kPi + kMergeTol) return;
      pos = std::clamp(w, 0.0, kPi);
    }
    b.pos = pos;
    if (k >= 0) b.zeros.push_back({k, sigma});
    raw.push_back(b);
  };
  for (int k = 0; k < static_cast<int>(fs.size()); ++k) {
    const ZonalFactor& f = fs[k];
    switch (f.kind) {
      case ZonalFactor::DS:
        add(f.axis + f.theta_star, k, +1, factor_scale(f));
        add(f.axis - f.theta_star, k, -1, factor_scale(f));
        break;
      case ZonalFactor::CP: add(f.axis, k, +1, 0.0); break;
      case ZonalFactor::CM: add(f.axis + kPi, k, +1, 0.0); break;
      case ZonalFactor::HP: add(f.axis, -1, 0, factor_scale(f)); break;
      case ZonalFactor::HM: add(f.axis + kPi, -1, 0, factor_scale(f)); break;
      case ZonalFactor::CONST: break;
    }
  }
  if (dom == ArcDomain::HALF) {
    Break b0{0.0, {}, p > 0, 0.0}, b1{kPi, {}, p > 0, 0.0};
    raw.push_back(b0);
    raw.push_back(b1);
  }
  std::sort(raw.begin(), raw.end(), [](const Break& a, const Break& b) { return a.pos < b.pos; });
  std::vector<Break> out;
  // Coincident zeros of different factors merge; anything else only merges
  // when the positions agree exactly, since tiny gaps can carry structure.
  auto mergeable = [](const Break& a, const Break& b) {
    if (a.pos == b.pos) return true;
    if (b.pos - a.pos >= kMergeTol || a.zeros.empty() || b.zeros.empty()) return false;
    for (const Zero& za : a.zeros)
      for (const Zero& zb : b.zeros)
        if (za.k == zb.k) return false;
    return true;
  };
  for (const Break& b : raw) {
    if (!out.empty() && mergeable(out.back(), b)) {
      for (const Zero& z : b.zeros) out.back().zeros.push_back(z);
      out.back().weight_zero = out.back().weight_zero || b.weight_zero;
      out.back().scale = min_scale(out.back().scale, b.scale);
      if (b.pos == 0.0 || b.pos == kPi) out.back().pos = b.pos;
    } else {
      out.push_back(b);
    }
  }
  if (dom == ArcDomain::CIRCLE) {
    Break wrapped = out.empty() ? Break{} : out.front();
    wrapped.pos += kTwoPi;
    if (out.size() >= 2 && mergeable(out.back(), wrapped)) {
      for (const Zero& z : out.back().zeros) out.front().zeros.push_back(z);
      out.front().scale = min_scale(out.front().scale, out.back().scale);
      out.pop_back();
    }
    if (out.empty()) out.push_back(Break{0.0, {}, false, 0.0});
    if (out.size() == 1) out.push_back(Break{wrap_2pi(out[0].pos + kPi), {}, false, 0.0});
    std::sort(out.begin(), out.end(), [](const Break& a, const Break& b) { return a.pos < b.pos; });
  }
  return out;
}

}  // namespace

void arc_integrate(const std::vector<ZonalFactor>& fs, ArcDomain dom, int weight_pow, int n,
                   const MultFn& mult, cplx* out, const GradedOptions& opt) {
  int p = dom == ArcDomain::HALF ? weight_pow : 0;
  std::vector<Break> br = collect_breaks(fs, dom, p);
  std::vector<double> pos;
  std::vector<BreakSpec> spec;
  for (const Break& b : br) {
    pos.push_back(b.pos);
    cplx e = b.weight_zero ? double(p) : 0.0;
    for (const Zero& z : b.zeros) {
      const ZonalFactor& f = fs[z.k];
      e += (f.kind == ZonalFactor::DS ? 1.0 : 2.0) * f.lambda;
    }
    spec.push_back(spec_for(e, true));
    spec.back().scale = b.scale;
  }
  std::vector<cplx> m(n);

  auto eval = [&](std::size_t bi, int s, double u, cplx* res) {
    const Break& b = br[bi];
    double phi = b.pos + s * u;
    cplx ex = 0;
    for (int k = 0; k < static_cast<int>(fs.size()); ++k) {
      const ZonalFactor& f = fs[k];
      double la;
      bool ng = false;
      const Zero* zk = nullptr;
      for (const Zero& z : b.zeros)
        if (z.k == k) zk = &z;
      if (zk) {
        double t = f.kind == ZonalFactor::DS ? zk->sigma * s * u : u;
        eval_local(f, t, la, ng);
      } else {
        f.eval(angdist(phi, f.axis), la, ng);
      }
      ex += factor_exponent(f, la, ng);
    }
    cplx val = std::exp(ex);
    if (p > 0) val *= std::pow(b.weight_zero ? std::sin(u) : std::sin(phi), p);
    mult(phi, m.data());
    for (int j = 0; j < n; ++j) res[j] = val * m[j];
  };

  auto h0 = [&](std::size_t bi, int s, cplx* res) {
    const Break& b = br[bi];
    cplx ex = 0;
    for (int k = 0; k < static_cast<int>(fs.size()); ++k) {
      const ZonalFactor& f = fs[k];
      double la;
      bool ng = false;
      const Zero* zk = nullptr;
      for (const Zero& z : b.zeros)
        if (z.k == k) zk = &z;
      if (zk) {
        int mm;
        local_limit(f, zk->sigma * s, la, ng, mm);
      } else {
        f.eval(angdist(b.pos, f.axis), la, ng);
      }
      ex += factor_exponent(f, la, ng);
    }
    cplx val = std::exp(ex);
    if (p > 0 && !b.weight_zero) val *= std::pow(std::sin(b.pos), p);
    mult(b.pos, m.data());
    for (int j = 0; j < n; ++j) res[j] = val * m[j];
  };

  std::fill(out, out + n, cplx(0));
  piecewise_graded(pos, dom == ArcDomain::CIRCLE, n, spec, eval, h0, out, opt);
}

std::vector<cplx> radial_transform(int d, double x0, double R, double xx, cplx lambda, Sign sign,
                                   int L, const GradedOptions& opt) {
  if (d != 2 && d != 3) throw ArgumentError("radial_transform: d must be 2 or 3");
  double pre = std::pow(2.0, -0.5 * (d - 1)) * sphere_area(d - 1);
  std::vector<cplx> out(L + 1, cplx(0));
  ZonalFactor f = ZonalFactor::make(x0, R, xx, lambda, sign, 0.0);
  if (f.kind == ZonalFactor::CONST) {
    out[0] = std::pow(2.0, -0.5 * (d - 1)) * sphere_area(d) * f.power(0.0);
    return out;
  }
  std::vector<double> z(L + 1);
  MultFn mult = [&](double phi, cplx* m) {
    zonal_polys(d, L, std::cos(phi), z.data());
    for (int l = 0; l <= L; ++l) m[l] = z[l];
  };
  arc_integrate({f}, ArcDomain::HALF, d - 2, L + 1, mult, out.data(), opt);
  for (auto& v : out) v *= pre;
  return out;
}

std::vector<cplx> cone_eigenvalues(int d, cplx lambda, int L, const GradedOptions& opt) {
  double h = 1.0 / kSqrt2;
  return radial_transform(d, h, h, 0.0, lambda, Sign::PLUS, L, opt);
}

namespace {

cplx pair_d2(const Point& x, cplx l1, Sign s1, const Point& y, cplx l2, Sign s2,
             const GradedOptions& opt) {
  std::vector<ZonalFactor> fs;
  fs.push_back(ZonalFactor::make(x.x0, x.R, x.xx, l1, s1,
                                 x.R > 0 ? std::atan2(x.coords[2], x.coords[1]) : 0.0));
  fs.push_back(ZonalFactor::make(y.x0, y.R, y.xx, l2, s2,
                                 y.R > 0 ? std::atan2(y.coords[2], y.coords[1]) : 0.0));
  cplx out = 0;
  MultFn one = [](double, cplx* m) { m[0] = 1.0; };
  arc_integrate(fs, ArcDomain::CIRCLE, 0, 1, one, &out, opt);
  return std::pow(2.0, -0.5) * out;
}

// y0 - R cos(psi) for the factor of y, psi in [0, pi]
double y_diff(const ZonalFactor& f, double psi) {
  double la;
  bool ng = false;
  f.eval(psi, la, ng);
  double v = kSqrt2 * std::exp(la);
  return ng ? -v : v;
}

// same, at psi = tau*theta* + t near a DS zero
double y_diff_local(const ZonalFactor& f, int tau, double t) {
  return 2.0 * f.R * std::sin(f.theta_star + 0.5 * tau * t) * std::sin(0.5 * tau * t);
}

cplx pair_d3(const Point& x, cplx l1, Sign s1, const Point& y, cplx l2, Sign s2,
             const GradedOptions& opt) {
  auto cone = [](const Point& p) {
    return p.region == Region::CONE_PLUS || p.region == Region::CONE_MINUS;
  };
  if (cone(x) || cone(y)) throw DomainError("pair_integral: cone points unsupported for d = 3");
  double pre = std::pow(2.0, -1.0);
  if (x.R == 0.0 || y.R == 0.0) {
    // one factor is constant; reduce to a single zonal transform
    const Point& c = x.R == 0.0 ? x : y;
    const Point& o = x.R == 0.0 ? y : x;
    cplx lc = x.R == 0.0 ? l1 : l2, lo = x.R == 0.0 ? l2 : l1;
    Sign sc = x.R == 0.0 ? s1 : s2, so = x.R == 0.0 ? s2 : s1;
    cplx k = branch_power(c.x0 / kSqrt2, lc, sc);
    return k * radial_transform(3, o.x0, o.R, o.xx, lo, so, 0, opt)[0];
  }
  Vec a = x.spatial_dir(), b = y.spatial_dir();
  double cth = a.dot(b);
  // |a x b| via the perpendicular component is accurate for small angles
  double sth = (b - cth * a).norm();
  double th12 = std::atan2(sth, cth);

  ZonalFactor fx = ZonalFactor::make(x.x0, x.R, x.xx, l1, s1, 0.0);
  if (sth < 1e-7) {
    ZonalFactor fy = ZonalFactor::make(y.x0, y.R, y.xx, l2, s2, cth > 0 ? 0.0 : kPi);
    cplx out = 0;
    MultFn one = [](double, cplx* m) { m[0] = 1.0; };
    arc_integrate({fx, fy}, ArcDomain::HALF, 1, 1, one, &out, opt);
    return pre * kTwoPi * out;
  }
  ZonalFactor fy = ZonalFactor::make(y.x0, y.R, y.xx, l2, s2, 0.0);

  // Outer breakpoints in theta1.
  enum Kind { END, XZERO, TANG, REG };
  struct OB {
    double pos;
    Kind kind;
    int which = 0;  // TANG: -1 for D-, +1 for D+
    int tau = 0;
  };
  std::vector<OB> ob{{0.0, END}, {kPi, END}};
  if (fx.kind == ZonalFactor::DS) ob.push_back({fx.theta_star, XZERO});
  if (fy.kind == ZonalFactor::DS) {
    double ts = fy.theta_star;
    auto addt = [&](double p, int which, int tau) {
      if (p > kMergeTol && p < kPi - kMergeTol) ob.push_back({p, TANG, which, tau});
    };
    addt(th12 + ts, -1, +1);
    addt(th12 - ts, -1, -1);
    addt(ts - th12, +1, +1);
    addt(kTwoPi - ts - th12, +1, -1);
  } else if (fy.kind == ZonalFactor::HP) {
    ob.push_back({th12, REG});
  } else if (fy.kind == ZonalFactor::HM) {
    ob.push_back({kPi - th12, REG});
  }
  std::sort(ob.begin(), ob.end(), [](const OB& p, const OB& q) { return p.pos < q.pos; });
  for (std::size_t i = 1; i < ob.size(); ++i)
    if (ob[i].pos - ob[i - 1].pos < 1e-10 && (ob[i].kind != REG && ob[i - 1].kind != REG) &&
        !(ob[i].kind == END || ob[i - 1].kind == END))
      throw SingularPointError("pair_integral: coinciding singular sets (null separation)");

  double y0 = y.x0, R2 = y.R;
  double c12 = std::cos(th12), s12 = std::sin(th12);

  // Inner integral over beta at theta1 = pos + s*u (anchored at ob[bi]).
  auto inner = [&](std::size_t bi, int s, double u) -> cplx {
    const OB& b = ob[bi];
    double th = b.pos + s * u;
    double sin1 = b.kind == END ? std::sin(u) : std::sin(th);
    double cos1 = std::cos(th);
    double dm, dp;
    auto dfun = [&](int which) {
      if (b.kind == TANG && b.which == which) return y_diff_local(fy, b.tau, s * u);
      double psi = std::abs(wrap_pi(th + which * th12));
      return y_diff(fy, psi);
    };
    dm = dfun(-1);
    dp = dfun(+1);
    double x0p = y0 - R2 * c12 * cos1;
    double Rp = R2 * sin1 * s12;
    double xxp = dm * dp;
    ZonalFactor g = ZonalFactor::make(x0p, Rp, xxp, l2, s2, 0.0, 0.0);
    if (g.kind == ZonalFactor::CONST) return kPi * g.power(0.0);
    if (g.kind == ZonalFactor::CP || g.kind == ZonalFactor::CM)
      throw SingularPointError("pair_integral: inner tangency evaluated exactly");
    cplx r = 0;
    MultFn one = [](double, cplx* m) { m[0] = 1.0; };
    GradedOptions io = opt;
    arc_integrate({g}, ArcDomain::HALF, 0, 1, one, &r, io);
    return r;
  };

  std::vector<double> pos;
  std::vector<BreakSpec> spec;
  for (const OB& b : ob) {
    pos.push_back(b.pos);
    switch (b.kind) {
      case END: spec.push_back(spec_for(1.0, false)); break;
      case XZERO:
        spec.push_back(spec_for(l1, true));
        spec.back().scale = factor_scale(fx);
        break;
      case TANG: spec.push_back(spec_for(l2 + 0.5, false)); break;
      case REG:
        spec.push_back(spec_for(0.0, false));
        spec.back().scale = factor_scale(fy);
        break;
    }
  }

  auto eval = [&](std::size_t bi, int s, double u, cplx* res) {
    const OB& b = ob[bi];
    double th = b.pos + s * u;
    double la;
    bool ng = false;
    if (b.kind == XZERO)
      eval_local(fx, s * u, la, ng);
    else
      fx.eval(std::clamp(th, 0.0, kPi), la, ng);
    double w = b.kind == END ? std::sin(u) : std::sin(th);
    res[0] = w * std::exp(factor_exponent(fx, la, ng)) * inner(bi, s, u);
  };
  auto h0 = [&](std::size_t bi, int s, cplx* res) {
    const OB& b = ob[bi];
    double la;
    bool ng = false;
    int m;
    local_limit(fx, s, la, ng, m);
    // inner integral at the zero itself, approached from this side
    cplx in = inner(bi, s, 0.0);
    res[0] = std::sin(b.pos) * std::exp(factor_exponent(fx, la, ng)) * in;
  };
  cplx out = 0;
  piecewise_graded(pos, false, 1, spec, eval, h0, &out, opt);
  return pre * 2.0 * out;
}

}  // namespace

cplx pair_integral(const Point& x, cplx lambda1, Sign s1, const Point& y, cplx lambda2, Sign s2,
                   const GradedOptions& opt) {
  if (x.dim() != y.dim()) throw ArgumentError("pair_integral: dimension mismatch");
  if (x.dim() == 2) return pair_d2(x, lambda1, s1, y, lambda2, s2, opt);
  if (x.dim() == 3) return pair_d3(x, lambda1, s1, y, lambda2, s2, opt);
  throw ArgumentError("pair_integral: d must be 2 or 3");
}

}  // namespace dsbd
