#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sp2 {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Error codes shared across the library.
enum class errc {
  singular_matrix,
  not_symplectic,
  not_block_triangular,
  sigma_not_in_span,
  tau_not_zero,
  insufficient_samples,
  not_a_subalgebra,
  ambient_mismatch,
  not_in_h_sigma,
  not_class_e,
  sigma_dim_zero,
  not_lower_triangular,
  sigma_not_in_sigma4_perp,
  precondition_violated,
  crazytau_failed,
  not_in_q,
  parse_error,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

/// Exact rational number, or a double once a transcendental parameter
/// evaluation is involved. Exactness is tracked explicitly and never
/// silently lost: structural arithmetic on exact values stays exact,
/// and any operation touching an approximate value yields one.
class Scalar {
public:
  Scalar() : rat_(0), exact_(true) {}
  Scalar(int n) : rat_(n), exact_(true) {}
  Scalar(long n) : rat_(n), exact_(true) {}
  Scalar(const Integer& n) : rat_(n), exact_(true) {}
  Scalar(const Rational& q) : rat_(q), exact_(true) {}
  Scalar(int num, int den) : rat_(Rational(num, den)), exact_(true) {
    if (den == 0) throw error(errc::singular_matrix, "rational with zero denominator");
  }

  /// The only way to make an approximate scalar.
  static Scalar approx(double v) {
    Scalar s;
    s.exact_ = false;
    s.dbl_   = v;
    return s;
  }

  bool exact() const { return exact_; }
  const Rational& rat() const {
    if (!exact_) throw error(errc::parse_error, "approximate scalar has no rational value");
    return rat_;
  }
  double to_double() const {
    return exact_ ? rat_.convert_to<double>() : dbl_;
  }

  bool is_zero() const { return exact_ ? rat_.is_zero() : dbl_ == 0.0; }
  int sign() const {
    if (exact_) return rat_.sign();
    return dbl_ > 0 ? 1 : (dbl_ < 0 ? -1 : 0);
  }

  Scalar operator-() const {
    if (exact_) return Scalar(Rational(-rat_));
    return approx(-dbl_);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(Rational(a.rat_ + b.rat_));
    return approx(a.to_double() + b.to_double());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(Rational(a.rat_ * b.rat_));
    return approx(a.to_double() * b.to_double());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw error(errc::singular_matrix, "division by zero");
    if (a.exact_ && b.exact_) return Scalar(Rational(a.rat_ / b.rat_));
    return approx(a.to_double() / b.to_double());
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Exact equality; throws if either side is approximate.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.rat_ == b.rat_;
    return a.to_double() == b.to_double();
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar abs() const {
    return sign() < 0 ? -*this : *this;
  }

  std::string str() const {
    if (exact_) {
      std::ostringstream os;
      os << rat_;
      return os.str();
    }
    std::ostringstream os;
    os.precision(17);
    os << dbl_;
    return os.str();
  }

private:
  Rational rat_;
  double dbl_ = 0.0;
  bool exact_;
};

inline bool approx_eq(const Scalar& a, const Scalar& b, double tol) {
  if (a.exact() && b.exact()) return a == b;
  return std::abs(a.to_double() - b.to_double()) <= tol;
}

inline bool approx_zero(const Scalar& a, double tol) {
  if (a.exact()) return a.is_zero();
  return std::abs(a.to_double()) <= tol;
}

/// Square root; exact when the argument is a perfect rational square.
inline Scalar sqrt_scalar(const Scalar& s) {
  if (s.sign() < 0) throw error(errc::precondition_violated, "sqrt of negative scalar");
  if (s.exact()) {
    const Rational& q = s.rat();
    Integer num = boost::multiprecision::numerator(q);
    Integer den = boost::multiprecision::denominator(q);
    Integer rn  = boost::multiprecision::sqrt(num);
    Integer rd  = boost::multiprecision::sqrt(den);
    if (rn * rn == num && rd * rd == den) return Scalar(Rational(rn, rd));
    return Scalar::approx(std::sqrt(s.to_double()));
  }
  return Scalar::approx(std::sqrt(s.to_double()));
}

/// Nearest rational with denominator <= maxden (continued fractions);
/// used to re-identify exact structure in floating samples.
inline Rational rationalize(double x, long maxden = 1000000) {
  bool neg = x < 0;
  double v = std::fabs(x);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int i = 0; i < 64; ++i) {
    double fl = std::floor(frac);
    if (fl > 9e18) break;
    Integer a  = static_cast<long long>(fl);
    Integer p2 = a * p1 + p0;
    Integer q2 = a * q1 + q0;
    if (q2 > maxden) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-12) break;
    frac = 1.0 / rem;
  }
  Rational r(p1, q1 == 0 ? Integer(1) : q1);
  return neg ? Rational(-r) : r;
}

}  // namespace sp2
