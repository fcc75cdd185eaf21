#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "dsbd/geometry.hpp"
#include "dsbd/propagators.hpp"
#include "dsbd/verify.hpp"

namespace dsbd::detail {

// Seeded sampler of points and directions for the checks.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed), next_(seed * 7919 + 17) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  Vec unit(int n) { return random_unit(next_++, n); }
  Point ds(int d, double tmax = 2.0) { return ds_chart(uniform(-tmax, tmax), unit(d)); }
  Point hyp(int d, Sign b, double smin = 0.2, double smax = 2.0) {
    return hyp_chart(uniform(smin, smax), unit(d), b);
  }

 private:
  std::mt19937_64 gen_;
  std::uint64_t next_;
};

inline std::string fmt(const char* name, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s=%.3e", name, v);
  return buf;
}

// Accumulates parts of a composite check as defect / tolerance ratios.
struct Parts {
  double worst = 0;
  void add(std::vector<std::string>& flags, const std::string& name, double defect, double tol) {
    flags.push_back(fmt(name.c_str(), defect) + " (tol " + fmt("", tol).substr(1) + ")");
    worst = std::max(worst, std::isfinite(defect) ? defect / tol : 1e300);
  }
};

// 1 + x.y for dS points in the cancellation-free form -(x - y).(x - y)/2.
inline double one_plus_z(const Point& x, const Point& y) {
  Vec diff = x.coords - y.coords;
  return -0.5 * mink_dot(diff, diff);
}

// Kernel table for the given parameters, built once per process.
const TwoPointTable& shared_table(const ModelParams& p);

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace dsbd::detail
