#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dsbd/fields.hpp"
#include "dsbd/propagators.hpp"
#include "dsbd/quadrature.hpp"

namespace dsbd {

// Asymptotic data (v^+, v^-) at I_+.
struct AsymptoticData {
  BoundaryFunction v_plus, v_minus;

  AsymptoticData() = default;
  AsymptoticData(BoundaryFunction p, BoundaryFunction m);
  static AsymptoticData zero(RulePtr r);
  AsymptoticData operator+(const AsymptoticData& o) const;
  AsymptoticData operator-(const AsymptoticData& o) const;
  AsymptoticData operator*(cplx s) const;
};

// Coefficients of u ~ f^{-i nu + alpha} w^- + f^{i nu + alpha} w^+ on dS.
struct FAsymptotics {
  BoundaryFunction w_plus, w_minus;
};

// Solution with data v: (P(v^+, +) + P(v^-, -)) / a(nu), where P(v, s) is the
// wave packet with exponent i nu - alpha and sign s.
class Reconstruction {
 public:
  Reconstruction(const AsymptoticData& data, const ModelParams& p, PacketOptions opt = {});

  cplx operator()(const Point& x) const;
  PacketValue evaluate(const Point& x) const;
  CVec on_ds_slice(double t, const Mat& dirs) const;
  FieldEvaluator as_field() const;

 private:
  WavePacket plus_, minus_;
  cplx inv_a_;
  ModelParams p_;
};

PacketValue reconstruct(const AsymptoticData& data, const Point& x, const ModelParams& p,
                        const PacketOptions& opt = {});

struct FitOptions {
  double t_lo = 4.0, t_hi = 6.0;
  int n_samples = 8;
  int corrections = 1;      // extra basis terms f^{2k} times each leading power
  double cond_limit = 1e8;  // fits above this condition number are flagged
};

struct FitResult {
  cplx w_plus = 0, w_minus = 0;
  double residual = 0;   // |u - fit| / |u| over the samples
  double residual_abs = 0, u_norm = 0;
  double condition = 0;  // of the scaled design matrix
  bool ill_conditioned = false;
};

double f_ds(double t);  // (cosh 2t)^{-1/2}

// Least-squares fit of samples u(t_k) against f^{alpha -+ i nu} f^{2j}, j <= corrections.
FitResult fit_f_asymptotics(const std::vector<double>& t, const std::vector<cplx>& u,
                            const ModelParams& p, int corrections = 1,
                            double cond_limit = 1e8);

FitResult extract_f_asymptotics(const FieldEvaluator& u, const Vec& xi_hat, const ModelParams& p,
                                const FitOptions& opt = {});

// Ordering of the conversion from f-asymptotics to data. PRINTED applies
// the displayed matrix rows as they stand:
//   ((w^+ - e^{-nu pi} S^{-1} w^-), (-w^+ + e^{nu pi} S^{-1} w^-)) / (e^{nu pi} - e^{-nu pi});
// SWAPPED exchanges the two output rows. SWAPPED is the convention under which
// positive-frequency plane waves carry data (a(nu) delta, 0); see
// calibrate_ordering.
enum class RhoOrdering { PRINTED, SWAPPED };
std::string to_string(RhoOrdering o);

constexpr RhoOrdering kDefaultOrdering = RhoOrdering::SWAPPED;

AsymptoticData rho_from_f(const FAsymptotics& w, const ModelParams& p,
                          RhoOrdering ordering = kDefaultOrdering, const KernelOptions& opt = {});

struct RhoExtraction {
  AsymptoticData data;
  FAsymptotics f;
  double residual = 0;  // |u - fit| / |u| over all nodes and samples
  double max_condition = 0;
  int flagged = 0;  // nodes with ill-conditioned fits
};

// Values of a solution at ds_chart(t, w) for the columns w of dirs.
using SliceFn = std::function<CVec(double t, const Mat& dirs)>;

RhoExtraction extract_rho(const SliceFn& u, RulePtr rule, const ModelParams& p,
                          const FitOptions& fit = {}, RhoOrdering ordering = kDefaultOrdering,
                          const KernelOptions& opt = {});
RhoExtraction extract_rho(const FieldEvaluator& u, RulePtr rule, const ModelParams& p,
                          const FitOptions& fit = {}, RhoOrdering ordering = kDefaultOrdering,
                          const KernelOptions& opt = {});

SliceFn slice_of(const FieldEvaluator& u);
SliceFn slice_of(const WavePacket& u);
SliceFn slice_of(const Reconstruction& u);

// Calibration of the output ordering: fit a sign-+ and a sign-- packet with
// profile psi and report, for each ordering, the relative L2(omega) defects
// against (a psi, 0) and (0, a psi). Exactly one ordering should pass.
struct OrderingCalibration {
  RhoOrdering chosen = kDefaultOrdering;
  double defect_printed = 0;  // max over both packets
  double defect_swapped = 0;
  bool unique = false;
  std::string evidence;
};

OrderingCalibration calibrate_ordering(const ModelParams& p, int rule_order = 32,
                                       double tol = 1e-2, const FitOptions& fit = {});

// The q form on data: sum_i q_ii int omega conj(a_i) b_i with
// q = diag(-e^{-nu pi}, e^{nu pi}) / (c a(nu) a(-nu)).
cplx q_pairing(const AsymptoticData& a, const AsymptoticData& b, const ModelParams& p);
// sum_i |q_ii int omega conj(a_i) b_i|, the scale of the terms in q_pairing.
double q_pairing_scale(const AsymptoticData& a, const AsymptoticData& b, const ModelParams& p);

// Harmonic form of the identities expressing (x.xi)^{-i nu - alpha} as a
// boundary integral of (x.xi')^{i nu - alpha} (xi'.xi)^{-i nu - alpha}: for every
// degree l <= L the radial factors satisfy
//   Phi_l(x; -i nu - alpha) = k(x) Phi_l(x; i nu - alpha) kappa_l(-i nu - alpha) / a(nu)
// with k = e^{+-nu pi} on dS (sign +-) and k = 1 on H. Evaluated at nu - i eta.
struct InvIdentityResult {
  double defect = 0;  // max relative defect over samples and degrees
  std::vector<double> per_sample;
};

InvIdentityResult inv_identity_check(const ModelParams& p, double eta, int L = 4,
                                     const GradedOptions& opt = {});

struct InvExtrapolation {
  double defect_eta1 = 0, defect_eta2 = 0;
  double defect_extrapolated = 0;  // linear extrapolation of the signed defects to eta = 0
  double defect_real = 0;          // direct evaluation at real nu
};

InvExtrapolation inv_identity_extrapolated(const ModelParams& p, double eta1 = 0.3,
                                           double eta2 = 0.15, int L = 4);

struct SymplecticOptions {
  int rule_order = 64;
  int smear_n = 32;  // Gauss-Legendre nodes per direction in the bump integrals
  FitOptions fit;
  RhoOrdering ordering = kDefaultOrdering;
};

struct SymplecticResult {
  cplx lhs = 0, rhs = 0;
  double defect = 0;      // |lhs - rhs| / scale
  double scale = 0;       // max(|rhs|, scale of the q-pairing terms)
  double fit_residual = 0;
  int flagged = 0;
};

// lhs = <rho(E f1), q rho(E f2)> with rho extracted from the smeared solutions
// x -> int E(x, y) f(y); rhs = i <f1, E f2> by direct double quadrature. d = 2.
SymplecticResult symplectic_check(const Bump& f1, const Bump& f2, const TwoPointTable& table,
                                  const SymplecticOptions& opt = {});

}  // namespace dsbd
