#pragma once

#include <array>
#include <cctype>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "sp2/scalar.hpp"

namespace sp2 {

/// Dense N x N matrix of scalars, row major. Sizes are fixed at 2 and 4;
/// there is no general-dimension machinery here.
template <int N>
class Mat {
public:
  Mat() = default;

  Mat(std::initializer_list<Scalar> entries) {
    int i = 0;
    for (const auto& s : entries) e_[i++] = s;
    if (i != N * N) throw error(errc::parse_error, "wrong entry count for matrix literal");
  }

  static Mat identity() {
    Mat m;
    for (int i = 0; i < N; ++i) m(i, i) = Scalar(1);
    return m;
  }
  static Mat zero() { return Mat(); }

  Scalar& operator()(int r, int c) { return e_[r * N + c]; }
  const Scalar& operator()(int r, int c) const { return e_[r * N + c]; }

  bool exact() const {
    for (const auto& s : e_)
      if (!s.exact()) return false;
    return true;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat m;
    for (int i = 0; i < N * N; ++i) m.e_[i] = a.e_[i] + b.e_[i];
    return m;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat m;
    for (int i = 0; i < N * N; ++i) m.e_[i] = a.e_[i] - b.e_[i];
    return m;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat m;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) {
        Scalar acc;
        for (int k = 0; k < N; ++k) acc += a(r, k) * b(k, c);
        m(r, c) = acc;
      }
    return m;
  }
  friend Mat operator*(const Scalar& s, const Mat& a) {
    Mat m;
    for (int i = 0; i < N * N; ++i) m.e_[i] = s * a.e_[i];
    return m;
  }

  Mat transpose() const {
    Mat m;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) m(c, r) = (*this)(r, c);
    return m;
  }

  Scalar det() const {
    Mat work = *this;
    return work.eliminate();
  }

  /// Gauss-Jordan inverse; exact on rational input.
  Mat invert() const {
    Mat a = *this;
    Mat inv = identity();
    for (int col = 0; col < N; ++col) {
      int piv = -1;
      for (int r = col; r < N; ++r)
        if (!a(r, col).is_zero()) { piv = r; break; }
      if (piv < 0) throw error(errc::singular_matrix, "matrix is singular");
      if (piv != col) { a.swap_rows(piv, col); inv.swap_rows(piv, col); }
      Scalar d = a(col, col);
      for (int c = 0; c < N; ++c) { a(col, c) = a(col, c) / d; inv(col, c) = inv(col, c) / d; }
      for (int r = 0; r < N; ++r) {
        if (r == col || a(r, col).is_zero()) continue;
        Scalar f = a(r, col);
        for (int c = 0; c < N; ++c) {
          a(r, c)   = a(r, c) - f * a(col, c);
          inv(r, c) = inv(r, c) - f * inv(col, c);
        }
      }
    }
    return inv;
  }

  int rank(double tol = 0.0) const {
    Mat a  = *this;
    int rk = 0;
    for (int col = 0; col < N && rk < N; ++col) {
      int piv = -1;
      double best = tol;
      for (int r = rk; r < N; ++r) {
        double mag = std::abs(a(r, col).to_double());
        if (!approx_zero(a(r, col), tol) && mag > best) { piv = r; best = mag; }
      }
      if (piv < 0) continue;
      a.swap_rows(piv, rk);
      for (int r = rk + 1; r < N; ++r) {
        if (approx_zero(a(r, col), tol)) continue;
        Scalar f = a(r, col) / a(rk, col);
        for (int c = col; c < N; ++c) a(r, c) = a(r, c) - f * a(rk, c);
      }
      ++rk;
    }
    return rk;
  }

  double inf_norm() const {
    double m = 0;
    for (const auto& s : e_) m = std::max(m, std::abs(s.to_double()));
    return m;
  }

  friend bool approx_eq(const Mat& a, const Mat& b, double tol) {
    for (int i = 0; i < N * N; ++i)
      if (!approx_eq(a.e_[i], b.e_[i], tol)) return false;
    return true;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    for (int i = 0; i < N * N; ++i)
      if (!(a.e_[i] == b.e_[i])) return false;
    return true;
  }

  std::string str() const {
    std::string out = "[";
    for (int r = 0; r < N; ++r) {
      out += "[";
      for (int c = 0; c < N; ++c) {
        out += (*this)(r, c).str();
        if (c + 1 < N) out += ",";
      }
      out += "]";
      if (r + 1 < N) out += ",";
    }
    return out + "]";
  }

private:
  void swap_rows(int a, int b) {
    for (int c = 0; c < N; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  // Row reduction returning the determinant.
  Scalar eliminate() {
    Scalar d(1);
    for (int col = 0; col < N; ++col) {
      int piv = -1;
      for (int r = col; r < N; ++r)
        if (!(*this)(r, col).is_zero()) { piv = r; break; }
      if (piv < 0) return Scalar(0);
      if (piv != col) { swap_rows(piv, col); d = -d; }
      d = d * (*this)(col, col);
      for (int r = col + 1; r < N; ++r) {
        if ((*this)(r, col).is_zero()) continue;
        Scalar f = (*this)(r, col) / (*this)(col, col);
        for (int c = col; c < N; ++c) (*this)(r, c) = (*this)(r, c) - f * (*this)(col, c);
      }
    }
    return d;
  }

  std::array<Scalar, N * N> e_{};
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

/// 2x2 symmetric matrix [[c,b],[b,a]], stored as its three entries.
struct SymMat2 {
  Scalar c, b, a;

  SymMat2() = default;
  SymMat2(Scalar c_, Scalar b_, Scalar a_) : c(c_), b(b_), a(a_) {}

  static SymMat2 zero() { return SymMat2(); }

  Mat2 to_mat2() const { return Mat2{c, b, b, a}; }

  static SymMat2 from_mat2(const Mat2& m, double tol = 0.0) {
    if (!approx_eq(m(0, 1), m(1, 0), tol))
      throw error(errc::precondition_violated, "matrix is not symmetric: " + m.str());
    return SymMat2(m(0, 0), m(0, 1), m(1, 1));
  }

  Scalar det() const { return c * a - b * b; }
  Scalar trace() const { return c + a; }
  bool is_zero() const { return c.is_zero() && b.is_zero() && a.is_zero(); }
  bool exact() const { return c.exact() && b.exact() && a.exact(); }

  friend SymMat2 operator+(const SymMat2& x, const SymMat2& y) {
    return SymMat2(x.c + y.c, x.b + y.b, x.a + y.a);
  }
  friend SymMat2 operator-(const SymMat2& x, const SymMat2& y) {
    return SymMat2(x.c - y.c, x.b - y.b, x.a - y.a);
  }
  SymMat2 operator-() const { return SymMat2(-c, -b, -a); }
  friend SymMat2 operator*(const Scalar& s, const SymMat2& x) {
    return SymMat2(s * x.c, s * x.b, s * x.a);
  }
  friend bool operator==(const SymMat2& x, const SymMat2& y) {
    return x.c == y.c && x.b == y.b && x.a == y.a;
  }
  friend bool approx_eq(const SymMat2& x, const SymMat2& y, double tol) {
    return approx_eq(x.c, y.c, tol) && approx_eq(x.b, y.b, tol) && approx_eq(x.a, y.a, tol);
  }
  double inf_norm() const {
    return std::max({std::abs(c.to_double()), std::abs(b.to_double()), std::abs(a.to_double())});
  }

  std::string str() const { return to_mat2().str(); }
};

/// Trace pairing <s,t> = tr(s t) on Sym(2,R).
inline Scalar pairing(const SymMat2& s, const SymMat2& t) {
  return s.c * t.c + Scalar(2) * (s.b * t.b) + s.a * t.a;
}

// ---- Named matrices ----

inline const Mat2& sigma1() { static Mat2 m{1, 0, 0, 1};  return m; }
inline const Mat2& sigma2() { static Mat2 m{1, 0, 0, -1}; return m; }
inline const Mat2& sigma3() { static Mat2 m{1, 0, 0, 0};  return m; }
inline const Mat2& sigma4() { static Mat2 m{0, 0, 0, 1};  return m; }
inline const Mat2& sigma5() { static Mat2 m{0, 1, 1, 0};  return m; }
inline const Mat2& mat_B()  { static Mat2 m{0, 0, 1, 0};  return m; }
inline const Mat2& mat_J2() { static Mat2 m{0, 1, -1, 0}; return m; }

inline SymMat2 sym_sigma1() { return SymMat2(1, 0, 1); }
inline SymMat2 sym_sigma2() { return SymMat2(1, 0, -1); }
inline SymMat2 sym_sigma3() { return SymMat2(1, 0, 0); }
inline SymMat2 sym_sigma4() { return SymMat2(0, 0, 1); }
inline SymMat2 sym_sigma5() { return SymMat2(0, 1, 0); }

/// Standard symplectic form J = [[0, I],[-I, 0]].
inline const Mat4& sympl_J() {
  static Mat4 m{0, 0, 1, 0,
                0, 0, 0, 1,
                -1, 0, 0, 0,
                0, -1, 0, 0};
  return m;
}

/// The Weyl representative through which all non-MA conjugations factor.
inline const Mat4& weyl_w0() {
  static Mat4 m{1, 0, 0, 0,
                0, 0, 0, -1,
                0, 0, 1, 0,
                0, 1, 0, 0};
  return m;
}

// ---- Block helpers ----

inline Mat4 from_blocks(const Mat2& A, const Mat2& B, const Mat2& C, const Mat2& D) {
  Mat4 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      m(r, c)         = A(r, c);
      m(r, c + 2)     = B(r, c);
      m(r + 2, c)     = C(r, c);
      m(r + 2, c + 2) = D(r, c);
    }
  return m;
}

inline Mat2 block(const Mat4& m, int br, int bc) {
  Mat2 b;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) b(r, c) = m(br * 2 + r, bc * 2 + c);
  return b;
}

// ---- Core structural operations ----

/// g^sharp = transpose-inverse.
inline Mat2 sharp(const Mat2& h) { return h.invert().transpose(); }

/// h^dagger[s] = t(h^-1) s h^-1, the action of GL(2,R) on Sym(2,R).
inline SymMat2 dagger(const Mat2& h, const SymMat2& s) {
  Mat2 hi = h.invert();
  Mat2 r  = hi.transpose() * s.to_mat2() * hi;
  // Algebraically symmetric; allow float round-off on the off-diagonal.
  Scalar b = r(0, 1);
  if (!r(0, 1).exact() || !r(1, 0).exact())
    b = Scalar::approx(0.5 * (r(0, 1).to_double() + r(1, 0).to_double()));
  return SymMat2(r(0, 0), b, r(1, 1));
}

inline bool is_symplectic(const Mat4& m, double tol) {
  Mat4 lhs = m.transpose() * sympl_J() * m;
  return approx_eq(lhs, sympl_J(), tol);
}

// ---- Matrix literal parsing ----

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

// Leading zeros would make the big-integer constructor read the token as
// octal; strip them, keeping the sign.
inline Integer parse_integer(std::string tok) {
  bool neg = !tok.empty() && tok[0] == '-';
  size_t start = (neg || (!tok.empty() && tok[0] == '+')) ? 1 : 0;
  while (start + 1 < tok.size() && tok[start] == '0') ++start;
  Integer v(tok.substr(start));
  return neg ? Integer(-v) : v;
}

inline Scalar parse_number(const std::string& s, size_t& i) {
  skip_ws(s, i);
  size_t start = i;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  bool has_dot = false, has_exp = false;
  while (i < s.size() &&
         (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' || s[i] == 'e' ||
          s[i] == 'E' || ((s[i] == '-' || s[i] == '+') && (s[i - 1] == 'e' || s[i - 1] == 'E')))) {
    if (s[i] == '.') has_dot = true;
    if (s[i] == 'e' || s[i] == 'E') has_exp = true;
    ++i;
  }
  if (i == start) throw error(errc::parse_error, "expected number at position " + std::to_string(i));
  std::string tok = s.substr(start, i - start);
  skip_ws(s, i);
  if (i < s.size() && s[i] == '/') {
    ++i;
    skip_ws(s, i);
    size_t dstart = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    std::string den = s.substr(dstart, i - dstart);
    if (den.empty()) throw error(errc::parse_error, "expected denominator");
    return Scalar(Rational(parse_integer(tok), parse_integer(den)));
  }
  if (has_exp) return Scalar::approx(std::stod(tok));
  if (has_dot) {
    // Finite decimal: keep exact.
    size_t dot = tok.find('.');
    std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
    Integer den = 1;
    for (size_t k = dot + 1; k < tok.size(); ++k) den *= 10;
    return Scalar(Rational(parse_integer(digits), den));
  }
  return Scalar(Rational(parse_integer(tok)));
}

inline std::vector<std::vector<Scalar>> parse_rows(const std::string& s, size_t& i) {
  skip_ws(s, i);
  if (i >= s.size() || s[i] != '[') throw error(errc::parse_error, "expected '['");
  ++i;
  std::vector<std::vector<Scalar>> rows;
  while (true) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != '[') throw error(errc::parse_error, "expected row '['");
    ++i;
    std::vector<Scalar> row;
    while (true) {
      row.push_back(parse_number(s, i));
      skip_ws(s, i);
      if (i < s.size() && s[i] == ',') { ++i; continue; }
      break;
    }
    if (i >= s.size() || s[i] != ']') throw error(errc::parse_error, "expected ']' closing row");
    ++i;
    rows.push_back(std::move(row));
    skip_ws(s, i);
    if (i < s.size() && s[i] == ',') { ++i; continue; }
    break;
  }
  if (i >= s.size() || s[i] != ']') throw error(errc::parse_error, "expected ']' closing matrix");
  ++i;
  return rows;
}

}  // namespace detail

/// Parse a row-major matrix literal, e.g. `[[1/2,0],[0,2]]`.
template <int N>
inline Mat<N> parse_mat(const std::string& s) {
  size_t i   = 0;
  auto rows  = detail::parse_rows(s, i);
  detail::skip_ws(s, i);
  if (i != s.size()) throw error(errc::parse_error, "trailing characters in matrix literal");
  if (static_cast<int>(rows.size()) != N)
    throw error(errc::parse_error, "expected " + std::to_string(N) + " rows");
  Mat<N> m;
  for (int r = 0; r < N; ++r) {
    if (static_cast<int>(rows[r].size()) != N)
      throw error(errc::parse_error, "expected " + std::to_string(N) + " columns");
    for (int c = 0; c < N; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

inline SymMat2 parse_sym(const std::string& s) {
  return SymMat2::from_mat2(parse_mat<2>(s));
}

}  // namespace sp2
