#include "dsbd/boundary.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dsbd/special.hpp"

namespace dsbd {

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_rule(const BoundaryFunction& a, const BoundaryFunction& b, const char* what) {
  if (!a.rule || !b.rule) throw ArgumentError(std::string(what) + ": missing rule");
  if (a.rule != b.rule && rule_fingerprint(*a.rule) != rule_fingerprint(*b.rule))
    throw ArgumentError(std::string(what) + ": components on different rules");
}

}  // namespace

AsymptoticData::AsymptoticData(BoundaryFunction p, BoundaryFunction m)
    : v_plus(std::move(p)), v_minus(std::move(m)) {
  require_same_rule(v_plus, v_minus, "AsymptoticData");
}

AsymptoticData AsymptoticData::zero(RulePtr r) {
  return AsymptoticData(BoundaryFunction::zero(r), BoundaryFunction::zero(r));
}

AsymptoticData AsymptoticData::operator+(const AsymptoticData& o) const {
  return AsymptoticData(v_plus + o.v_plus, v_minus + o.v_minus);
}

AsymptoticData AsymptoticData::operator-(const AsymptoticData& o) const {
  return AsymptoticData(v_plus - o.v_plus, v_minus - o.v_minus);
}

AsymptoticData AsymptoticData::operator*(cplx s) const {
  return AsymptoticData(v_plus * s, v_minus * s);
}

Reconstruction::Reconstruction(const AsymptoticData& data, const ModelParams& p, PacketOptions opt)
    : plus_(data.v_plus, Sign::PLUS, p.lam_plus(), p, opt),
      minus_(data.v_minus, Sign::MINUS, p.lam_plus(), p, opt),
      inv_a_(1.0 / a_of_nu(p)),
      p_(p) {}

PacketValue Reconstruction::evaluate(const Point& x) const {
  PacketValue a = plus_.evaluate(x), b = minus_.evaluate(x);
  PacketValue out;
  out.value = (a.value + b.value) * inv_a_;
  out.error = (a.error + b.error) * std::abs(inv_a_);
  out.monotone = a.monotone && b.monotone;
  return out;
}

cplx Reconstruction::operator()(const Point& x) const { return evaluate(x).value; }

CVec Reconstruction::on_ds_slice(double t, const Mat& dirs) const {
  return (plus_.on_ds_slice(t, dirs) + minus_.on_ds_slice(t, dirs)) * inv_a_;
}

FieldEvaluator Reconstruction::as_field() const {
  Reconstruction copy = *this;
  return FieldEvaluator{[copy](const Point& x) { return copy(x); }, p_, "reconstruction"};
}

PacketValue reconstruct(const AsymptoticData& data, const Point& x, const ModelParams& p,
                        const PacketOptions& opt) {
  return Reconstruction(data, p, opt).evaluate(x);
}

double f_ds(double t) { return 1.0 / std::sqrt(std::cosh(2.0 * t)); }

FitResult fit_f_asymptotics(const std::vector<double>& t, const std::vector<cplx>& u,
                            const ModelParams& p, int corrections, double cond_limit) {
  if (t.size() != u.size()) throw ArgumentError("fit_f_asymptotics: size mismatch");
  int k = 2 * (corrections + 1);
  if (static_cast<int>(t.size()) < std::max(4, k)) throw ArgumentError("fit_f_asymptotics: too few samples");
  Eigen::Index n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXcd A(n, k);
  CVec b(n);
  cplx im(0, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    double lf = std::log(f_ds(t[static_cast<std::size_t>(i)]));
    for (int j = 0; j <= corrections; ++j) {
      A(i, 2 * j) = std::exp((p.alpha() + im * p.nu + 2.0 * j) * lf);
      A(i, 2 * j + 1) = std::exp((p.alpha() - im * p.nu + 2.0 * j) * lf);
    }
    b[i] = u[static_cast<std::size_t>(i)];
  }
  Vec scale(k);
  for (int j = 0; j < k; ++j) {
    scale[j] = A.col(j).norm();
    A.col(j) /= scale[j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const auto& sv = svd.singularValues();
  FitResult out;
  out.condition = sv[sv.size() - 1] > 0 ? sv[0] / sv[sv.size() - 1] : INFINITY;
  out.ill_conditioned = !(out.condition <= cond_limit);
  CVec c = A.colPivHouseholderQr().solve(b);
  double bn = b.norm();
  out.residual_abs = (A * c - b).norm();
  out.u_norm = bn;
  out.residual = bn > 0 ? out.residual_abs / bn : 0.0;
  out.w_plus = c[0] / scale[0];
  out.w_minus = c[1] / scale[1];
  return out;
}

FitResult extract_f_asymptotics(const FieldEvaluator& u, const Vec& xi_hat, const ModelParams& p,
                                const FitOptions& opt) {
  if (opt.n_samples < 4) throw ArgumentError("extract_f_asymptotics: n_samples < 4");
  std::vector<double> t;
  std::vector<cplx> vals;
  for (int k = 0; k < opt.n_samples; ++k) {
    double tk = opt.t_lo + (opt.t_hi - opt.t_lo) * k / (opt.n_samples - 1);
    t.push_back(tk);
    vals.push_back(u(ds_chart(tk, xi_hat)));
  }
  return fit_f_asymptotics(t, vals, p, opt.corrections, opt.cond_limit);
}

std::string to_string(RhoOrdering o) {
  return o == RhoOrdering::PRINTED ? "printed" : "swapped";
}

AsymptoticData rho_from_f(const FAsymptotics& w, const ModelParams& p, RhoOrdering ordering,
                          const KernelOptions& opt) {
  require_same_rule(w.w_plus, w.w_minus, "rho_from_f");
  cplx ep = std::exp(p.nu * kPi), em = std::exp(-p.nu * kPi);
  cplx den = ep - em;
  BoundaryFunction s = smatrix_apply(w.w_minus, SDirection::INVERSE, p, opt);
  BoundaryFunction r1 = (w.w_plus - s * em) * (1.0 / den);
  BoundaryFunction r2 = (s * ep - w.w_plus) * (1.0 / den);
  if (ordering == RhoOrdering::PRINTED) return AsymptoticData(r1, r2);
  return AsymptoticData(r2, r1);
}

RhoExtraction extract_rho(const SliceFn& u, RulePtr rule, const ModelParams& p,
                          const FitOptions& fit, RhoOrdering ordering, const KernelOptions& opt) {
  if (fit.n_samples < 4) throw ArgumentError("extract_rho: n_samples < 4");
  std::size_t n = rule->size();
  std::vector<double> t;
  std::vector<CVec> rows;
  for (int k = 0; k < fit.n_samples; ++k) {
    double tk = fit.t_lo + (fit.t_hi - fit.t_lo) * k / (fit.n_samples - 1);
    t.push_back(tk);
    rows.push_back(u(tk, rule->xi));
    if (static_cast<std::size_t>(rows.back().size()) != n)
      throw ArgumentError("extract_rho: slice returned the wrong number of values");
  }
  RhoExtraction out;
  CVec wp(static_cast<Eigen::Index>(n)), wm(static_cast<Eigen::Index>(n));
  std::vector<cplx> vals(t.size());
  double res2 = 0, u2 = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < t.size(); ++k) vals[k] = rows[k][static_cast<Eigen::Index>(j)];
    FitResult r = fit_f_asymptotics(t, vals, p, fit.corrections, fit.cond_limit);
    wp[static_cast<Eigen::Index>(j)] = r.w_plus;
    wm[static_cast<Eigen::Index>(j)] = r.w_minus;
    res2 += r.residual_abs * r.residual_abs;
    u2 += r.u_norm * r.u_norm;
    out.max_condition = std::max(out.max_condition, r.condition);
    if (r.ill_conditioned) ++out.flagged;
  }
  out.residual = u2 > 0 ? std::sqrt(res2 / u2) : 0.0;
  out.f.w_plus = BoundaryFunction(rule, wp);
  out.f.w_minus = BoundaryFunction(rule, wm);
  out.data = rho_from_f(out.f, p, ordering, opt);
  return out;
}

SliceFn slice_of(const FieldEvaluator& u) {
  return [u](double t, const Mat& dirs) {
    CVec out(dirs.cols());
    for (Eigen::Index k = 0; k < dirs.cols(); ++k) out[k] = u(ds_chart(t, dirs.col(k)));
    return out;
  };
}

SliceFn slice_of(const WavePacket& u) {
  return [u](double t, const Mat& dirs) { return u.on_ds_slice(t, dirs); };
}

SliceFn slice_of(const Reconstruction& u) {
  return [u](double t, const Mat& dirs) { return u.on_ds_slice(t, dirs); };
}

RhoExtraction extract_rho(const FieldEvaluator& u, RulePtr rule, const ModelParams& p,
                          const FitOptions& fit, RhoOrdering ordering, const KernelOptions& opt) {
  return extract_rho(slice_of(u), std::move(rule), p, fit, ordering, opt);
}

OrderingCalibration calibrate_ordering(const ModelParams& p, int rule_order, double tol,
                                       const FitOptions& fit) {
  RulePtr rule = sphere_rule(p, rule_order);
  BoundaryFunction psi = zonal_basis(1, make_direction(Vec::Unit(p.d, 0)), rule) +
                         zonal_basis(2, make_direction(random_unit(11, p.d)), rule) * cplx(0.5, 0.2);
  cplx a = a_of_nu(p);
  BoundaryFunction target = psi * a;
  BoundaryFunction zero = BoundaryFunction::zero(rule);
  double norm = l2_norm(target);

  auto defect = [&](const AsymptoticData& got, const AsymptoticData& want) {
    AsymptoticData d = got - want;
    return std::hypot(l2_norm(d.v_plus), l2_norm(d.v_minus)) / norm;
  };

  OrderingCalibration out;
  double dp[2] = {0, 0}, ds[2] = {0, 0};
  std::ostringstream ev;
  int idx = 0;
  for (Sign s : {Sign::PLUS, Sign::MINUS}) {
    WavePacket packet(psi, s, p.lam_plus(), p);
    RhoExtraction ex = extract_rho(slice_of(packet), rule, p, fit, RhoOrdering::PRINTED);
    AsymptoticData printed = ex.data;
    AsymptoticData swapped(printed.v_minus, printed.v_plus);
    AsymptoticData want = s == Sign::PLUS ? AsymptoticData(target, zero) : AsymptoticData(zero, target);
    dp[idx] = defect(printed, want);
    ds[idx] = defect(swapped, want);
    ev << "sign" << (s == Sign::PLUS ? "+" : "-") << " packet: printed " << dp[idx] << ", swapped "
       << ds[idx] << "; ";
    ++idx;
  }
  out.defect_printed = std::max(dp[0], dp[1]);
  out.defect_swapped = std::max(ds[0], ds[1]);
  bool ok_p = out.defect_printed < tol, ok_s = out.defect_swapped < tol;
  out.unique = ok_p != ok_s;
  out.chosen = ok_p && !ok_s ? RhoOrdering::PRINTED : RhoOrdering::SWAPPED;
  ev << "expected (a psi, 0) for sign+ and (0, a psi) for sign-";
  out.evidence = ev.str();
  return out;
}

cplx q_pairing(const AsymptoticData& a, const AsymptoticData& b, const ModelParams& p) {
  CMat2 q = q_matrix(p);
  return q(0, 0) * inner(a.v_plus, b.v_plus) + q(1, 1) * inner(a.v_minus, b.v_minus);
}

double q_pairing_scale(const AsymptoticData& a, const AsymptoticData& b, const ModelParams& p) {
  CMat2 q = q_matrix(p);
  return std::abs(q(0, 0) * inner(a.v_plus, b.v_plus)) +
         std::abs(q(1, 1) * inner(a.v_minus, b.v_minus));
}

namespace {

// Normalized differences LHS - RHS of the harmonic identity at every sample and degree.
std::vector<std::vector<cplx>> inv_differences(const ModelParams& pc, int L, const GradedOptions& opt) {
  int d = pc.d;
  cplx lp = pc.lam_plus(), lm = pc.lam_minus();
  cplx a = a_of_nu(pc);
  std::vector<cplx> kappa = cone_eigenvalues(d, lm, L, opt);
  Vec axis = Vec::Unit(d, 0);
  struct Sample {
    Point x;
    Sign s;
    cplx k;
  };
  std::vector<Sample> samples;
  for (double t : {-0.7, 0.0, 0.5, 1.2}) {
    Point x = ds_chart(t, axis);
    samples.push_back({x, Sign::PLUS, std::exp(pc.nu * kPi)});
    samples.push_back({x, Sign::MINUS, std::exp(-pc.nu * kPi)});
  }
  for (double s : {0.5, 1.0}) samples.push_back({hyp_chart(s, axis, Sign::PLUS), Sign::PLUS, 1.0});

  std::vector<std::vector<cplx>> out;
  for (const Sample& sm : samples) {
    std::vector<cplx> lhs = radial_transform(d, sm.x.x0, sm.x.R, sm.x.xx, lm, sm.s, L, opt);
    std::vector<cplx> rhs = radial_transform(d, sm.x.x0, sm.x.R, sm.x.xx, lp, sm.s, L, opt);
    double scale = 0;
    for (cplx v : lhs) scale = std::max(scale, std::abs(v));
    std::vector<cplx> diff(static_cast<std::size_t>(L + 1));
    for (int l = 0; l <= L; ++l)
      diff[static_cast<std::size_t>(l)] = (lhs[l] - sm.k * rhs[l] * kappa[l] / a) / scale;
    out.push_back(std::move(diff));
  }
  return out;
}

double max_abs(const std::vector<std::vector<cplx>>& v, std::vector<double>* per = nullptr) {
  double m = 0;
  for (const auto& row : v) {
    double r = 0;
    for (cplx c : row) r = std::max(r, std::abs(c));
    if (per) per->push_back(r);
    m = std::max(m, r);
  }
  return m;
}

}  // namespace

InvIdentityResult inv_identity_check(const ModelParams& p, double eta, int L,
                                     const GradedOptions& opt) {
  if (!(eta >= 0.0 && eta <= 0.5)) throw ArgumentError("inv_identity_check: eta must lie in [0, 0.5]");
  ModelParams pc = ModelParams::continued(p.d, p.nu - cplx(0, eta));
  InvIdentityResult out;
  out.defect = max_abs(inv_differences(pc, L, opt), &out.per_sample);
  return out;
}

InvExtrapolation inv_identity_extrapolated(const ModelParams& p, double eta1, double eta2, int L) {
  auto diffs = [&](double eta) {
    return inv_differences(ModelParams::continued(p.d, p.nu - cplx(0, eta)), L, {});
  };
  auto d1 = diffs(eta1), d2 = diffs(eta2);
  InvExtrapolation out;
  out.defect_eta1 = max_abs(d1);
  out.defect_eta2 = max_abs(d2);
  auto d0 = d1;
  for (std::size_t i = 0; i < d0.size(); ++i)
    for (std::size_t l = 0; l < d0[i].size(); ++l)
      d0[i][l] = (eta1 * d2[i][l] - eta2 * d1[i][l]) / (eta1 - eta2);
  out.defect_extrapolated = max_abs(d0);
  out.defect_real = max_abs(inv_differences(p, L, {}));
  return out;
}

SymplecticResult symplectic_check(const Bump& f1, const Bump& f2, const TwoPointTable& table,
                                  const SymplecticOptions& opt) {
  const ModelParams& p = table.params();
  RulePtr rule = sphere_rule(p, opt.rule_order);
  PairKernel e = [&table](const Point& x, const Point& y) { return table.causal(x, y); };
  int n = opt.smear_n;
  auto slice = [&](const Bump& f) -> SliceFn {
    return [&, f](double t, const Mat& dirs) {
      CVec out(dirs.cols());
      for (Eigen::Index k = 0; k < dirs.cols(); ++k)
        out[k] = smear_bump(ds_chart(t, dirs.col(k)), f, e, n, n);
      return out;
    };
  };
  RhoExtraction r1 = extract_rho(slice(f1), rule, p, opt.fit, opt.ordering);
  RhoExtraction r2 = extract_rho(slice(f2), rule, p, opt.fit, opt.ordering);

  SymplecticResult out;
  out.lhs = q_pairing(r1.data, r2.data, p);
  ChartGrid g1 = bump_grid(f1, p.d, n, n);
  std::vector<cplx> terms(g1.points.size());
  for (std::size_t a = 0; a < g1.points.size(); ++a)
    terms[a] = std::conj(g1.weights[a]) * smear_bump(g1.points[a], f2, e, n, n);
  out.rhs = cplx(0, 1) * pairwise_sum(terms.data(), terms.size());
  out.scale = std::max(std::abs(out.rhs), q_pairing_scale(r1.data, r2.data, p));
  out.defect = out.scale > 0 ? std::abs(out.lhs - out.rhs) / out.scale : 0.0;
  out.fit_residual = std::max(r1.residual, r2.residual);
  out.flagged = r1.flagged + r2.flagged;
  return out;
}

}  // namespace dsbd
