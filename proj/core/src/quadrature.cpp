#include "dsbd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace dsbd {

namespace {
constexpr double kPi = std::numbers::pi;

GaussRule compute_gauss(int n) {
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    g.x[i] = -z;
    g.x[n - 1 - i] = z;
    g.w[i] = g.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return g;
}

template <class T>
T psum(const T* v, std::size_t n) {
  if (n <= 8) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t h = n / 2;
  return psum(v, h) + psum(v + h, n - h);
}
}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw ArgumentError("gauss_legendre: n < 1");
  static std::mutex m;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
  return it->second;
}

double pairwise_sum(const double* v, std::size_t n) { return psum(v, n); }
cplx pairwise_sum(const cplx* v, std::size_t n) { return psum(v, n); }

double sphere_area(int n) {
  // 2 pi^{n/2} / Gamma(n/2)
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double omega_mass(int d) { return std::pow(2.0, -0.5 * (d - 1)) * sphere_area(d); }

RulePtr sphere_rule(int d, int order) {
  if (order < 4) throw ArgumentError("sphere_rule: order must be >= 4");
  auto r = std::make_shared<SphereRule>();
  r->d = d;
  r->order = order;
  if (d == 2) {
    int n = order;
    double w = std::pow(2.0, -0.5) * 2.0 * kPi / n;
    r->xi.resize(2, n);
    for (int k = 0; k < n; ++k) {
      double phi = 2.0 * kPi * k / n;
      Vec u(2);
      u << std::cos(phi), std::sin(phi);
      r->nodes.push_back(make_direction(u));
      r->weights.push_back(w);
      r->xi.col(k) = u;
    }
    r->band_limit = order / 2 - 1;
  } else if (d == 3) {
    int nt = std::max(2, order / 4);
    int np = std::max(4, order / 2);
    const GaussRule& g = gauss_legendre(nt);
    r->xi.resize(3, nt * np);
    int k = 0;
    for (int i = 0; i < nt; ++i) {
      double ct = g.x[i], st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int j = 0; j < np; ++j) {
        double phi = 2.0 * kPi * (j + 0.5 * (i % 2)) / np;
        Vec u(3);
        u << st * std::cos(phi), st * std::sin(phi), ct;
        r->nodes.push_back(make_direction(u));
        r->weights.push_back(0.5 * g.w[i] * 2.0 * kPi / np);
        r->xi.col(k++) = u;
      }
    }
    r->band_limit = std::max(0, order / 4 - 1);
  } else {
    throw ArgumentError("sphere_rule: only d = 2 and d = 3 are supported");
  }
  return r;
}

RulePtr sphere_rule(const ModelParams& p, int order) { return sphere_rule(p.d, order); }

std::string rule_fingerprint(const SphereRule& r) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::int64_t v) {
    unsigned char b[8];
    std::memcpy(b, &v, 8);
    for (unsigned char c : b) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  mix(r.d);
  mix(r.order);
  for (Eigen::Index k = 0; k < r.xi.cols(); ++k)
    for (Eigen::Index i = 0; i < r.xi.rows(); ++i) {
      // signed zero and tiny roundoff map to the same integer
      mix(static_cast<std::int64_t>(std::llround(r.xi(i, k) * 1e12)));
    }
  std::ostringstream os;
  os << "d" << r.d << "-o" << r.order << "-" << std::hex << h;
  return os.str();
}

BoundaryFunction::BoundaryFunction(RulePtr r, CVec v) : rule(std::move(r)), values(std::move(v)) {
  if (!rule || static_cast<std::size_t>(values.size()) != rule->size())
    throw ArgumentError("BoundaryFunction: values not aligned with rule");
}

BoundaryFunction BoundaryFunction::zero(RulePtr r) {
  auto n = r->size();
  return BoundaryFunction(std::move(r), CVec::Zero(n));
}

BoundaryFunction BoundaryFunction::sample(RulePtr r, const std::function<cplx(const Vec&)>& fn) {
  CVec v(r->size());
  for (std::size_t k = 0; k < r->size(); ++k) v[k] = fn(r->nodes[k].xi_hat);
  return BoundaryFunction(std::move(r), std::move(v));
}

namespace {
void check_same(const BoundaryFunction& a, const BoundaryFunction& b) {
  if (a.rule.get() != b.rule.get() &&
      (!a.rule || !b.rule || a.rule->d != b.rule->d || a.rule->order != b.rule->order))
    throw ArgumentError("BoundaryFunction: different rules");
}
}  // namespace

BoundaryFunction BoundaryFunction::operator+(const BoundaryFunction& o) const {
  check_same(*this, o);
  return BoundaryFunction(rule, values + o.values);
}

BoundaryFunction BoundaryFunction::operator-(const BoundaryFunction& o) const {
  check_same(*this, o);
  return BoundaryFunction(rule, values - o.values);
}

BoundaryFunction BoundaryFunction::operator*(cplx s) const { return BoundaryFunction(rule, values * s); }

BoundaryFunction BoundaryFunction::conj() const { return BoundaryFunction(rule, values.conjugate()); }

cplx integrate(const BoundaryFunction& f) {
  if (!f.rule || f.size() != f.rule->size()) throw ArgumentError("integrate: misaligned function");
  std::vector<cplx> t(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) t[k] = f.rule->weights[k] * f.values[k];
  return pairwise_sum(t.data(), t.size());
}

cplx inner(const BoundaryFunction& f, const BoundaryFunction& g) {
  check_same(f, g);
  return integrate(BoundaryFunction(f.rule, f.values.conjugate().cwiseProduct(g.values)));
}

double l2_norm(const BoundaryFunction& f) { return std::sqrt(std::abs(inner(f, f))); }

void zonal_polys(int d, int L, double c, double* out) {
  out[0] = 1.0;
  if (L < 1) return;
  out[1] = c;
  for (int l = 1; l < L; ++l) {
    if (d == 2)
      out[l + 1] = 2.0 * c * out[l] - out[l - 1];
    else if (d == 3)
      out[l + 1] = ((2.0 * l + 1.0) * c * out[l] - l * out[l - 1]) / (l + 1.0);
    else
      throw ArgumentError("zonal_polys: unsupported d");
  }
}

double zonal_poly(int d, int l, double c) {
  if (l < 0) throw ArgumentError("zonal_poly: l < 0");
  std::vector<double> t(l + 1);
  zonal_polys(d, l, c, t.data());
  return t[l];
}

double zonal_multiplicity(int d, int l) {
  if (d == 2) return l == 0 ? 1.0 : 2.0;
  if (d == 3) return 2.0 * l + 1.0;
  throw ArgumentError("zonal_multiplicity: unsupported d");
}

BoundaryFunction zonal_basis(int l, const BoundaryDirection& axis, RulePtr rule) {
  if (l < 0) throw ArgumentError("zonal_basis: l < 0");
  int d = rule->d;
  CVec v(rule->size());
  for (std::size_t k = 0; k < rule->size(); ++k)
    v[k] = zonal_poly(d, l, std::clamp(rule->xi.col(k).dot(axis.xi_hat), -1.0, 1.0));
  return BoundaryFunction(rule, std::move(v));
}

CVec project_degrees(const BoundaryFunction& v, int L, const Vec& x) {
  const SphereRule& r = *v.rule;
  int d = r.d;
  double scale = 1.0 / (sphere_area(d) * std::pow(2.0, -0.5 * (d - 1)));
  std::vector<std::vector<cplx>> terms(L + 1, std::vector<cplx>(r.size()));
  std::vector<double> z(L + 1);
  for (std::size_t k = 0; k < r.size(); ++k) {
    double c = std::clamp(r.xi.col(k).dot(x), -1.0, 1.0);
    zonal_polys(d, L, c, z.data());
    cplx wv = r.weights[k] * v.values[k];
    for (int l = 0; l <= L; ++l) terms[l][k] = wv * z[l];
  }
  CVec out(L + 1);
  for (int l = 0; l <= L; ++l)
    out[l] = zonal_multiplicity(d, l) * scale * pairwise_sum(terms[l].data(), terms[l].size());
  return out;
}

cplx project_degree(const BoundaryFunction& v, int l, const Vec& x) {
  return project_degrees(v, l, x)[l];
}

Extrapolated extrapolate(const std::vector<double>& eps, const std::vector<cplx>& f,
                         const std::vector<cplx>& powers) {
  if (eps.size() != f.size() || eps.size() != powers.size() + 1)
    throw ArgumentError("extrapolate: need one more sample than correction terms");
  Extrapolated out;
  out.samples = f;
  std::size_t n = eps.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (!(eps[k + 1] < eps[k])) throw ArgumentError("extrapolate: schedule must decrease");
  double e0 = eps[0];
  auto solve = [&](std::size_t first, std::size_t nterms) {
    std::size_t m = n - first;
    Eigen::MatrixXcd A(m, nterms + 1);
    CVec b(m);
    for (std::size_t k = 0; k < m; ++k) {
      A(k, 0) = 1.0;
      double lr = std::log(eps[first + k] / e0);
      for (std::size_t j = 0; j < nterms; ++j) A(k, j + 1) = std::exp(powers[j] * lr);
      b[k] = f[first + k];
    }
    CVec c = A.colPivHouseholderQr().solve(b);
    return c[0];
  };
  out.value = solve(0, powers.size());
  if (n >= 2) {
    cplx prev = powers.empty() ? f[n - 1] : solve(1, powers.size() - 1);
    out.error = std::abs(out.value - prev);
  }
  for (std::size_t k = 0; k + 2 < n; ++k)
    if (std::abs(f[k + 2] - f[k + 1]) > std::abs(f[k + 1] - f[k])) out.monotone = false;
  return out;
}

Extrapolated richardson(const std::vector<double>& eps, const std::vector<cplx>& f) {
  std::vector<cplx> p;
  for (std::size_t j = 1; j < eps.size(); ++j) p.push_back(double(j));
  return extrapolate(eps, f, p);
}

std::vector<double> default_eps_schedule(const SphereRule& r) {
  double h = r.d == 2 ? 2 * kPi / r.order : kPi / (r.order / 4);
  std::vector<double> out;
  for (double c : {12.0, 9.0, 6.0, 4.5, 3.0, 2.0}) out.push_back(c * h);
  return out;
}

Extrapolated kernel_integral_extrapolated(const EpsKernel& kernel, const BoundaryFunction& f,
                                          std::vector<double> eps_schedule) {
  if (eps_schedule.empty()) eps_schedule = default_eps_schedule(*f.rule);
  if (eps_schedule.size() < 3) throw ArgumentError("eps schedule needs at least 3 entries");
  std::vector<cplx> vals;
  const SphereRule& r = *f.rule;
  std::vector<cplx> t(r.size());
  for (double e : eps_schedule) {
    for (std::size_t k = 0; k < r.size(); ++k)
      t[k] = f.values[k] == cplx(0) ? cplx(0) : r.weights[k] * kernel(r.nodes[k], e) * f.values[k];
    vals.push_back(pairwise_sum(t.data(), t.size()));
  }
  return richardson(eps_schedule, vals);
}

}  // namespace dsbd
