#pragma once

#include <complex>

#include <gtest/gtest.h>

#include "unitarize/fixtures.h"
#include "unitarize/linalg.h"

namespace unitarize::test {

inline Rng make_rng(std::uint64_t salt = 0) { return Rng(seed_from_env() + salt); }

inline CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// The involution used throughout: T^2 = I, invariant gram [[1,1],[1,3]].
inline CMatrix involution() { return mat2(1, 2, 0, -1); }
inline CMatrix involution_gram() { return mat2(1, 1, 1, 3); }

inline double rel_err(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm() / std::max(1e-300, b.norm());
}

inline double max_abs(const CMatrix& a) { return a.cwiseAbs().maxCoeff(); }

inline CMatrix diag(std::initializer_list<Complex> v) {
  CVector d(static_cast<Index>(v.size()));
  Index i = 0;
  for (auto z : v) d(i++) = z;
  return d.asDiagonal();
}

inline const Complex kI{0.0, 1.0};

}  // namespace unitarize::test
