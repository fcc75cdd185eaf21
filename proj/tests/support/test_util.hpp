#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "doctest.h"

namespace dsbd::test {

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace dsbd::test

// |got - want| <= tol * |want|
#define CHECK_REL(got, want, tol) CHECK(::dsbd::test::rel_err((got), (want)) <= (tol))
// |got - want| <= tol
#define CHECK_ABS(got, want, tol) CHECK(std::abs((got) - (want)) <= (tol))
