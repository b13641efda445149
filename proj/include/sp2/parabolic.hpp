#pragma once

#include <optional>
#include <string>
#include <tuple>

#include "sp2/matrix.hpp"

namespace sp2 {

/// Element g(sigma, h) of the maximal parabolic Q, realized as the
/// block lower triangular symplectic matrix [[h, 0], [sigma h, h^sharp]].
class QElement {
public:
  QElement() : sigma_(SymMat2::zero()), h_(Mat2::identity()) {}

  QElement(SymMat2 sigma, Mat2 h) : sigma_(std::move(sigma)), h_(std::move(h)) {
    if (h_.det().is_zero()) throw error(errc::singular_matrix, "h block must be invertible");
  }

  static QElement identity() { return QElement(); }

  const SymMat2& sigma() const { return sigma_; }
  const Mat2& h() const { return h_; }

  Mat4 realization() const {
    Mat2 sh = sigma_.to_mat2() * h_;
    return from_blocks(h_, Mat2::zero(), sh, sharp(h_));
  }

  bool exact() const { return sigma_.exact() && h_.exact(); }

  std::string str() const {
    return "g(sigma=" + sigma_.str() + ", h=" + h_.str() + ")";
  }

private:
  SymMat2 sigma_;
  Mat2 h_;
};

/// Group law g(s,h) g(s',h') = g(s + h^dagger[s'], h h').
inline QElement q_compose(const QElement& g1, const QElement& g2) {
  return QElement(g1.sigma() + dagger(g1.h(), g2.sigma()), g1.h() * g2.h());
}

/// g(s,h)^-1 = g(-t(h) s h, h^-1).
inline QElement q_invert(const QElement& g) {
  Mat2 m = g.h().transpose() * g.sigma().to_mat2() * g.h();
  return QElement(-SymMat2::from_mat2(m, 0.0), g.h().invert());
}

enum class q_member_fail { not_block_triangular, not_symplectic };

/// Factor a 4x4 matrix as g(sigma, h) in Q, or report why it is not in Q.
/// sigma is recovered from the lower-left block as C h^-1 and its symmetry
/// is asserted, not assumed.
inline std::optional<QElement> q_member(const Mat4& m, double tol,
                                        q_member_fail* why = nullptr) {
  auto fail = [&](q_member_fail f) -> std::optional<QElement> {
    if (why) *why = f;
    return std::nullopt;
  };
  Mat2 A = block(m, 0, 0), B = block(m, 0, 1), C = block(m, 1, 0), D = block(m, 1, 1);
  if (!approx_eq(B, Mat2::zero(), tol)) return fail(q_member_fail::not_block_triangular);
  // One-parameter scalings make det A legitimately tiny, so only exact
  // singularity disqualifies here.
  if (A.det().is_zero()) return fail(q_member_fail::not_block_triangular);
  if (!is_symplectic(m, tol)) return fail(q_member_fail::not_symplectic);
  Mat2 shi = C * A.invert();
  if (!approx_eq(shi(0, 1), shi(1, 0), tol == 0.0 ? 0.0 : 10 * tol))
    return fail(q_member_fail::not_symplectic);
  Scalar b = shi(0, 1);
  if (!b.exact()) b = Scalar::approx(0.5 * (shi(0, 1).to_double() + shi(1, 0).to_double()));
  return QElement(SymMat2(shi(0, 0), b, shi(1, 1)), A);
}

/// Throwing variant with the spec'd error taxonomy.
inline QElement q_member_or_throw(const Mat4& m, double tol) {
  q_member_fail why;
  auto q = q_member(m, tol, &why);
  if (q) return *q;
  if (why == q_member_fail::not_block_triangular)
    throw error(errc::not_block_triangular, "matrix is not block lower triangular with invertible upper-left block");
  throw error(errc::not_symplectic, "matrix is not symplectic");
}

/// One Langlands factor of Q = MAN.
struct LanglandsFactor {
  enum class tag { M, A, N } which;
  Mat2 h;        // M payload, |det| = 1
  Scalar lambda; // A payload, > 0
  SymMat2 sigma; // N payload
};

/// g = n * m * a with n in N, a = lambda I, m block diagonal with |det| = 1.
/// lambda is a float unless |det h| is a perfect rational square.
inline std::tuple<LanglandsFactor, LanglandsFactor, LanglandsFactor>
langlands_split(const QElement& g) {
  Scalar lambda = sqrt_scalar(g.h().det().abs());
  Mat2 m        = (Scalar(1) / lambda) * g.h();
  LanglandsFactor fm{LanglandsFactor::tag::M, m, Scalar(1), SymMat2::zero()};
  LanglandsFactor fa{LanglandsFactor::tag::A, Mat2::identity(), lambda, SymMat2::zero()};
  LanglandsFactor fn{LanglandsFactor::tag::N, Mat2::identity(), Scalar(1), g.sigma()};
  return {fm, fa, fn};
}

inline QElement langlands_recompose(const LanglandsFactor& m, const LanglandsFactor& a,
                                    const LanglandsFactor& n) {
  QElement qn(n.sigma, Mat2::identity());
  QElement qm(SymMat2::zero(), m.h);
  QElement qa(SymMat2::zero(), a.lambda * Mat2::identity());
  return q_compose(q_compose(qn, qm), qa);
}

}  // namespace sp2
