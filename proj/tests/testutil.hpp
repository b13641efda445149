#pragma once

#include <random>

#include "sp2/matrix.hpp"

namespace testutil {

using sp2::Mat2;
using sp2::Rational;
using sp2::Scalar;
using sp2::SymMat2;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917ULL);
  return gen;
}

// Small rationals keep every product of a few factors well inside exact
// range and the matrices comfortably invertible when needed.
inline Rational rand_rational(bool nonzero = false) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  int n = num(rng());
  while (nonzero && n == 0) n = num(rng());
  return Rational(n, den(rng()));
}

inline Scalar rand_scalar(bool nonzero = false) { return Scalar(rand_rational(nonzero)); }

inline SymMat2 rand_sym() {
  return SymMat2(rand_scalar(), rand_scalar(), rand_scalar());
}

inline Mat2 rand_invertible2() {
  while (true) {
    Mat2 m{rand_scalar(), rand_scalar(), rand_scalar(), rand_scalar()};
    if (!m.det().is_zero()) return m;
  }
}

inline Mat2 rand_lower_triangular() {
  return Mat2{rand_scalar(true), Scalar(0), rand_scalar(), rand_scalar(true)};
}

}  // namespace testutil
