#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "sp2/hfamily.hpp"
#include "sp2/matrix.hpp"

namespace sp2 {

inline Mat2 bracket(const Mat2& x, const Mat2& y) { return x * y - y * x; }

/// Exact span of 2x2 matrices in echelon form over the flat coordinates
/// (m00, m01, m10, m11).
class Mat2Span {
public:
  Mat2Span() = default;
  explicit Mat2Span(const std::vector<Mat2>& gens) {
    for (const auto& g : gens) {
      if (!g.exact()) throw error(errc::precondition_violated, "span basis must be exact");
      insert(g);
    }
  }

  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Mat2>& basis() const { return rows_; }

  bool contains(const Mat2& m) const { return reduce(m) == Mat2::zero(); }

  Mat2 reduce(Mat2 m) const {
    for (const auto& row : rows_) {
      int p = pivot(row);
      Scalar c = coord(m, p);
      if (!c.is_zero()) m = m - c * row;
    }
    return m;
  }

  friend bool operator==(const Mat2Span& x, const Mat2Span& y) {
    if (x.dim() != y.dim()) return false;
    for (int i = 0; i < x.dim(); ++i)
      if (!(x.rows_[i] == y.rows_[i])) return false;
    return true;
  }

private:
  static Scalar coord(const Mat2& m, int i) { return m(i / 2, i % 2); }
  static int pivot(const Mat2& m) {
    for (int i = 0; i < 4; ++i)
      if (!coord(m, i).is_zero()) return i;
    return 4;
  }

  void insert(Mat2 m) {
    m = reduce(m);
    int p = pivot(m);
    if (p == 4) return;
    m = (Scalar(1) / coord(m, p)) * m;
    for (auto& row : rows_) {
      Scalar c = coord(row, p);
      if (!c.is_zero()) row = row - c * m;
    }
    rows_.push_back(m);
    std::sort(rows_.begin(), rows_.end(),
              [](const Mat2& x, const Mat2& y) { return pivot(x) < pivot(y); });
  }

  std::vector<Mat2> rows_;
};

/// Basis of the symmetrizer algebra attached to each canonical sigma.
inline std::vector<Mat2> ambient_algebra(int sigma_index) {
  switch (sigma_index) {
    case 1: return {mat_J2(), Mat2::identity()};
    case 2: return {sigma5(), Mat2::identity()};
    case 3: return {Mat2::identity(), sigma4(), mat_B()};
  }
  throw error(errc::precondition_violated, "sigma index must be 1, 2 or 3");
}

/// A subspace of one of the three symmetrizer algebras, bracket closure
/// checked at construction.
struct LieSub {
  int ambient;  // 1, 2, 3
  std::vector<Mat2> basis;

  LieSub(int ambient_, std::vector<Mat2> basis_) : ambient(ambient_), basis(std::move(basis_)) {
    Mat2Span amb(ambient_algebra(ambient));
    for (const auto& g : basis) {
      if (!g.exact()) throw error(errc::precondition_violated, "generators must be exact");
      if (!amb.contains(g))
        throw error(errc::ambient_mismatch, "generator lies outside the ambient algebra");
    }
    Mat2Span span(basis);
    for (const auto& x : span.basis())
      for (const auto& y : span.basis())
        if (!span.contains(bracket(x, y)))
          throw error(errc::not_a_subalgebra, "bracket escapes the span");
  }
};

/// Canonical label for a subalgebra, with the conjugator l in H(sigma_i)
/// carrying the input span onto the canonical representative:
/// l X l^-1 spans the Lie algebra of the named family.
struct SubalgebraLabel {
  int ambient;
  hfam tag;        // canonical representative, as the family it exponentiates to
  FamParam param;  // alpha or gamma where applicable
  Mat2 conjugator;

  std::string family_name() const { return HFamily(tag, param).name(); }

  std::string str() const {
    std::string n;
    switch (tag) {
      case hfam::h0_s1: n = "h(sigma1)"; break;
      case hfam::halpha_s1: n = "h_alpha(sigma1)"; break;
      case hfam::hinf_s1: n = "h_inf(sigma1)"; break;
      case hfam::h0_s2: n = "h(sigma2)"; break;
      case hfam::halpha_s2: n = "h_alpha(sigma2)"; break;
      case hfam::hinf_s2: n = "h_inf(sigma2)"; break;
      case hfam::t0: n = "h(sigma3)"; break;
      case hfam::h0_s3: n = "h_0(sigma3)"; break;
      case hfam::h1_s3: n = "h_1(sigma3)"; break;
      case hfam::hinf_s3: n = "h_inf(sigma3)"; break;
      case hfam::hgamma0_s3: n = "h_gamma0(sigma3)"; break;
      case hfam::k0_s3: n = "k_0(sigma3)"; break;
      case hfam::kinf_s3: n = "k_inf(sigma3)"; break;
      case hfam::lgamma_s3: n = "l_gamma(sigma3)"; break;
    }
    if (HFamily(tag, param).has_param()) n += "[" + param.str() + "]";
    return n;
  }
};

namespace detail {

inline SubalgebraLabel classify_planar(const LieSub& s) {
  // Ambient span{J, I} (rotations) or span{sigma5, I} (boosts); both are
  // abelian, so every subspace is a subalgebra.
  hfam full   = s.ambient == 1 ? hfam::h0_s1 : hfam::h0_s2;
  hfam line   = s.ambient == 1 ? hfam::halpha_s1 : hfam::halpha_s2;
  hfam rotate = s.ambient == 1 ? hfam::hinf_s1 : hfam::hinf_s2;
  Mat2Span span(s.basis);
  if (span.dim() == 2) return {s.ambient, full, FamParam{}, Mat2::identity()};
  if (span.dim() != 1)
    throw error(errc::precondition_violated, "subalgebra must have dimension 1 or 2");
  const Mat2& v = span.basis()[0];
  // Coordinates v = x I + y X.
  Scalar x = v(0, 0);
  Scalar y = v(0, 1);
  if (x.is_zero()) return {s.ambient, rotate, FamParam{}, Mat2::identity()};
  Scalar alpha = y / x;
  Mat2 conj = Mat2::identity();
  if (alpha.sign() < 0) {
    // Reflection flips the X direction, folding alpha to |alpha|.
    conj  = Mat2{Scalar(1), Scalar(0), Scalar(0), Scalar(-1)};
    alpha = -alpha;
  }
  return {s.ambient, line, FamParam::of(alpha.rat()), conj};
}

inline SubalgebraLabel classify_triangular(const LieSub& s) {
  Mat2Span span(s.basis);
  int d = span.dim();
  if (d == 3) return {3, hfam::t0, FamParam{}, Mat2::identity()};
  if (d == 1) {
    const Mat2& v = span.basis()[0];
    Scalar c = v(0, 0), b = v(1, 0), a = v(1, 1);
    if (c == a) {
      if (b.is_zero()) return {3, hfam::hinf_s3, FamParam{}, Mat2::identity()};
      if (c.is_zero()) return {3, hfam::h0_s3, FamParam{}, Mat2::identity()};
      // span{gamma I + B} with gamma = c/b != 0; diag(1, gamma) rescales
      // B so the generator becomes I + B.
      Scalar g = c / b;
      return {3, hfam::h1_s3, FamParam{}, Mat2{Scalar(1), Scalar(0), Scalar(0), g}};
    }
    // Diagonal part proportional to (gamma, gamma+1); the lower entry is
    // removed by a unipotent, using l sigma4 l^-1 = -(b_l/c_l) B + sigma4.
    Scalar g  = c / (a - c);
    Scalar bp = b / (a - c);
    return {3, hfam::hgamma0_s3, FamParam::of(g.rat()),
            Mat2{Scalar(1), Scalar(0), bp, Scalar(1)}};
  }
  if (d != 2) throw error(errc::precondition_violated, "subalgebra must have dimension 1, 2 or 3");
  if (span.contains(mat_B())) {
    // Complement generator modulo B has zero lower-left entry.
    Mat2 w = Mat2::zero();
    for (const auto& row : span.basis()) {
      Mat2 r = row;
      r(1, 0) = Scalar(0);
      if (!(r == Mat2::zero())) { w = r; break; }
    }
    Scalar c = w(0, 0), a = w(1, 1);
    if (c == a) return {3, hfam::kinf_s3, FamParam{}, Mat2::identity()};
    Scalar g = c / (a - c);
    return {3, hfam::lgamma_s3, FamParam::of(g.rat()), Mat2::identity()};
  }
  // B not in the span: the diagonal projection is bijective and closure
  // forces the span to be {x I + y (sigma4 + beta B)} for a single beta.
  // Solve for the basis vectors with diagonal parts (1,1) and (0,1).
  // Coordinates relative to {I, sigma4, B}: (x, y, z) with m = x I + y
  // sigma4 + z B.
  std::array<std::array<Scalar, 3>, 2> m;
  for (int i = 0; i < 2; ++i) {
    const Mat2& row = span.basis()[i];
    m[i] = {row(0, 0), row(1, 1) - row(0, 0), row(1, 0)};
  }
  // Find the combination with (x, y) = (0, 1): its z is beta.
  Scalar det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (det.is_zero())
    throw error(errc::not_a_subalgebra, "diagonal projection of the span is degenerate");
  Scalar u = -m[1][0] / det, v = m[0][0] / det;  // coefficients giving (0,1)
  Scalar beta = u * m[0][2] + v * m[1][2];
  // l (sigma4 + beta B) l^-1 = sigma4 with l = [[1,0],[beta,1]].
  return {3, hfam::k0_s3, FamParam{}, Mat2{Scalar(1), Scalar(0), beta, Scalar(1)}};
}

}  // namespace detail

/// Canonical label with an exact conjugator witness, per ambient.
inline SubalgebraLabel classify_subalgebra(const LieSub& s) {
  SubalgebraLabel label = s.ambient == 3 ? detail::classify_triangular(s)
                                         : detail::classify_planar(s);
  // Verify the witness: the conjugated span must equal the canonical one.
  std::vector<Mat2> conj_basis;
  Mat2 li = label.conjugator.invert();
  for (const auto& g : s.basis) conj_basis.push_back(label.conjugator * g * li);
  Mat2Span got(conj_basis);
  Mat2Span want(HFamily(label.tag, label.param).generators());
  if (!(got == want))
    throw error(errc::precondition_violated, "internal witness check failed for " + label.str());
  return label;
}

/// The catalog family whose Lie algebra is the input span: the canonical
/// family conjugated back through the witness.
inline HFamily exponentiate(const SubalgebraLabel& label) {
  HFamily f(label.tag, label.param);
  if (label.conjugator == Mat2::identity()) return f;
  return f.with_conjugator(label.conjugator.invert());
}

}  // namespace sp2
