#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sp2/subalgebra.hpp"
#include "sp2/triple.hpp"

namespace sp2 {

namespace detail {

/// Completing squares: returns columns P and diagonal values (d1, d2)
/// with tP sigma P = diag(d1, d2), all exact on exact input.
inline std::tuple<Mat2, Scalar, Scalar> complete_squares(const SymMat2& s) {
  if (!s.c.is_zero()) {
    Mat2 P{Scalar(1), -s.b / s.c, Scalar(0), Scalar(1)};
    return {P, s.c, s.det() / s.c};
  }
  if (!s.a.is_zero()) {
    Mat2 P{Scalar(0), Scalar(1), Scalar(1), -s.b / s.a};
    return {P, s.a, s.det() / s.a};
  }
  if (!s.b.is_zero()) {
    Mat2 P{Scalar(1), Scalar(1), Scalar(1), Scalar(-1)};
    return {P, Scalar(2) * s.b, Scalar(-2) * s.b};
  }
  return {Mat2::identity(), Scalar(0), Scalar(0)};
}

}  // namespace detail

/// Sylvester signature of a symmetric matrix, with canonical form index
/// and a congruence witness: dagger(witness, sigma_k) = sign * sigma.
/// sign absorbs the p >= q normalization (span{s} = span{-s}).
struct Signature {
  int p = 0, q = 0, r = 2;
  int k = 0;     // canonical index: 1, 2, 3; 0 for the zero matrix
  int sign = 1;  // +1 or -1
  Mat2 witness = Mat2::identity();

  SymMat2 canonical() const {
    switch (k) {
      case 1: return sym_sigma1();
      case 2: return sym_sigma2();
      case 3: return sym_sigma3();
    }
    return SymMat2::zero();
  }

  std::string str() const {
    return "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
  }
};

inline Signature sylvester_reduce(const SymMat2& s) {
  auto [P, d1, d2] = detail::complete_squares(s);
  int s1 = d1.sign(), s2 = d2.sign();
  Signature out;
  out.p = (s1 > 0) + (s2 > 0);
  out.q = (s1 < 0) + (s2 < 0);
  out.r = 2 - out.p - out.q;
  if (out.q > out.p) {
    std::swap(out.p, out.q);
    out.sign = -1;
    s1 = -s1;
    s2 = -s2;
  }
  if (out.p == 2) out.k = 1;
  else if (out.p == 1 && out.q == 1) out.k = 2;
  else if (out.p == 1) out.k = 3;
  else { out.k = 0; return out; }
  // Column scaling to unit entries, then a swap so the canonical diagonal
  // order (positive, then negative, then zero) is restored.
  Mat2 S = Mat2::identity();
  if (!d1.is_zero()) S(0, 0) = Scalar(1) / sqrt_scalar(d1.abs());
  if (!d2.is_zero()) S(1, 1) = Scalar(1) / sqrt_scalar(d2.abs());
  SymMat2 target = out.canonical();
  bool need_swap = !(Scalar(s1) == target.c && Scalar(s2) == target.a);
  out.witness = P * S * (need_swap ? sigma5() : Mat2::identity());
  return out;
}

/// lambda with dagger(h, sigma) = lambda sigma, if proportional.
inline std::optional<Scalar> symmetrizer_membership(const Mat2& h, const SymMat2& s,
                                                    double tol = 1e-9) {
  SymMat2 d = dagger(h, s);
  // Ratio at the largest coordinate of sigma.
  Scalar num, den;
  double best = -1;
  const std::pair<Scalar, Scalar> coords[] = {{d.c, s.c}, {d.b, s.b}, {d.a, s.a}};
  for (const auto& [x, y] : coords) {
    double m = std::abs(y.to_double());
    if (m > best) { best = m; num = x; den = y; }
  }
  if (den.is_zero()) throw error(errc::precondition_violated, "sigma must be nonzero");
  Scalar lambda = num / den;
  bool exact = d.exact() && s.exact();
  if (!approx_eq(d, lambda * s, exact ? 0.0 : tol)) return std::nullopt;
  return lambda;
}

/// Splitting of the symmetrizer group as (scale, fixed-part): for h with
/// dagger(h, sigma) = eps e^s sigma, returns e^s and f = e^{s/2} h with
/// dagger(f, sigma) = eps sigma. eps = -1 only occurs for sigma2.
struct IsoSplit {
  Scalar scale;  // e^s = |lambda|
  Mat2 f;
  int eps;
};

inline IsoSplit iso_split(const Mat2& h, const SymMat2& s, double tol = 1e-9) {
  auto lambda = symmetrizer_membership(h, s, tol);
  if (!lambda) throw error(errc::not_in_h_sigma, "h is not in the symmetrizer group of sigma");
  int eps = lambda->sign();
  Scalar scale = lambda->abs();
  return {scale, sqrt_scalar(scale) * h, eps};
}

/// One row of the MA-conjugacy catalog: a (possibly parametrized) family
/// Sigma_k x| F or its dual Sigma_k-perp x| tF, with a stable identifier.
struct MACatalogEntry {
  std::string id;       // "(1.i)" ... "(3.xvi)"
  int sigma_index;      // 1, 2, 3
  bool dual;            // perp span, transposed family
  hfam tag;             // family of the non-dual side
  bool parametrized;    // carries alpha or gamma
  bool alpha_param;     // alpha in [0, inf]; otherwise gamma in R
  std::string range;    // human-readable parameter range

  SymSpan sigma_span() const {
    SymSpan base = sigma_index == 1 ? span_sigma1()
                 : sigma_index == 2 ? span_sigma2() : span_sigma3();
    return dual ? base.perp() : base;
  }

  HFamily family(FamParam p = {}) const {
    hfam tg = tag;
    FamParam fp;
    if (parametrized) {
      if (p.inf) {
        if (!alpha_param)
          throw error(errc::precondition_violated, "gamma parameter cannot be infinity");
        tg = sigma_index == 1 ? hfam::hinf_s1 : hfam::hinf_s2;
      } else {
        fp = p;
      }
    }
    HFamily f(tg, fp);
    return dual ? f.with_transposed() : f;
  }

  Triple make(FamParam p = {}) const { return Triple(sigma_span(), family(p)); }

  std::string str(FamParam p = {}) const {
    std::string s = id;
    if (parametrized) s += " " + std::string(alpha_param ? "alpha" : "gamma") + "=" + p.str();
    return s;
  }
};

inline const std::vector<MACatalogEntry>& ma_catalog() {
  static std::vector<MACatalogEntry> entries = [] {
    std::vector<MACatalogEntry> v;
    auto quad = [&v](int k, const char* i1, const char* i2, const char* i3, const char* i4,
                     hfam full, hfam line) {
      v.push_back({i1, k, false, full, false, false, ""});
      v.push_back({i2, k, false, line, true, true, "[0,inf]"});
      v.push_back({i3, k, true, full, false, false, ""});
      v.push_back({i4, k, true, line, true, true, "[0,inf]"});
    };
    quad(1, "(1.i)", "(1.ii)", "(1.iii)", "(1.iv)", hfam::h0_s1, hfam::halpha_s1);
    quad(2, "(2.i)", "(2.ii)", "(2.iii)", "(2.iv)", hfam::h0_s2, hfam::halpha_s2);
    const std::pair<const char*, hfam> rows3[] = {
        {"(3.i)", hfam::t0},          {"(3.ii)", hfam::h0_s3},
        {"(3.iii)", hfam::h1_s3},     {"(3.iv)", hfam::hinf_s3},
        {"(3.v)", hfam::hgamma0_s3},  {"(3.vi)", hfam::k0_s3},
        {"(3.vii)", hfam::kinf_s3},   {"(3.viii)", hfam::lgamma_s3}};
    const char* dual_ids[] = {"(3.ix)", "(3.x)", "(3.xi)", "(3.xii)",
                              "(3.xiii)", "(3.xiv)", "(3.xv)", "(3.xvi)"};
    for (int i = 0; i < 8; ++i) {
      bool par = rows3[i].second == hfam::hgamma0_s3 || rows3[i].second == hfam::lgamma_s3;
      v.push_back({rows3[i].first, 3, false, rows3[i].second, par, false, par ? "R" : ""});
    }
    for (int i = 0; i < 8; ++i) {
      bool par = rows3[i].second == hfam::hgamma0_s3 || rows3[i].second == hfam::lgamma_s3;
      v.push_back({dual_ids[i], 3, true, rows3[i].second, par, false, par ? "R" : ""});
    }
    return v;
  }();
  return entries;
}

inline const MACatalogEntry& ma_entry(const std::string& id) {
  for (const auto& e : ma_catalog())
    if (e.id == id) return e;
  throw error(errc::parse_error, "unknown catalog entry " + id);
}

/// Result of reducing a class-E triple to its MA-catalog entry: the group
/// conjugated by the QElement lands in the entry's family.
struct MAReduction {
  std::string entry_id;
  FamParam param;
  QElement conjugator;
};

namespace detail {

/// Recover the exact form of m X m^-1 inside the planar ambient
/// span{I, J} or span{I, sigma5}: the trace and the determinant of the
/// traceless part are conjugation invariants, and the structure equation
/// pins the conjugate of the second generator to +-J (resp. +-sigma5).
inline Mat2 exactify_planar(const Mat2& X, const Mat2& m, int ambient) {
  Scalar x = (X(0, 0) + X(1, 1)) / Scalar(2);
  Mat2 T = X - x * Mat2::identity();
  Scalar d = T.det();
  // det(yJ) = y^2, det(y sigma5) = -y^2.
  Scalar dv = ambient == 1 ? d : -d;
  Scalar y = dv.exact() ? sqrt_scalar(dv)
                        : Scalar::approx(std::sqrt(std::max(0.0, dv.to_double())));
  Mat2 dir = ambient == 1 ? mat_J2() : sigma5();
  Mat2 numeric = m * X * m.invert();
  Mat2 plus = x * Mat2::identity() + y * dir;
  if ((numeric - plus).inf_norm() <= (numeric - (x * Mat2::identity() - y * dir)).inf_norm())
    return plus;
  return x * Mat2::identity() - y * dir;
}

/// A generator that picked up float entries from a float conjugator
/// wrapper is recovered exactly when it is a scalar multiple of a
/// rational pattern: normalize by the leading entry and rationalize.
inline Mat2 snap_generator(const Mat2& X) {
  if (X.exact()) return X;
  Scalar lead;
  for (int i = 0; i < 4; ++i) {
    Scalar v = X(i / 2, i % 2);
    if (std::abs(v.to_double()) > 1e-9) { lead = v; break; }
  }
  if (lead.is_zero()) return Mat2::zero();
  Mat2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      double v = (X(r, c) / lead).to_double();
      Rational q = rationalize(v, 1000000);
      if (std::abs(q.convert_to<double>() - v) > 1e-9)
        throw error(errc::precondition_violated,
                    "generator cannot be normalized to rational form");
      out(r, c) = Scalar(q);
    }
  return out;
}

inline std::string dual_id(const std::string& id) {
  static const std::pair<const char*, const char*> map[] = {
      {"(1.i)", "(1.iii)"}, {"(1.ii)", "(1.iv)"}, {"(2.i)", "(2.iii)"}, {"(2.ii)", "(2.iv)"},
      {"(3.i)", "(3.ix)"},  {"(3.ii)", "(3.x)"},  {"(3.iii)", "(3.xi)"},
      {"(3.iv)", "(3.xii)"}, {"(3.v)", "(3.xiii)"}, {"(3.vi)", "(3.xiv)"},
      {"(3.vii)", "(3.xv)"}, {"(3.viii)", "(3.xvi)"}};
  for (const auto& [a, b] : map)
    if (id == a) return b;
  throw error(errc::precondition_violated, "no dual for entry " + id);
}

inline MAReduction ma_reduce_dim1(const Triple& t, double tol) {
  SymMat2 s = t.sigma.basis()[0];
  Signature sig = sylvester_reduce(s);
  Mat2 m;
  if (sig.k == 3) {
    // Only the span matters, so the rational congruence columns suffice
    // and exactness of the conjugated generators is preserved.
    auto pr = complete_squares(s);
    Mat2 u = std::get<1>(pr).is_zero() ? sigma5() : Mat2::identity();
    m = (std::get<0>(pr) * u).invert();
  } else {
    m = sig.witness.invert();
  }
  // Conjugated Lie algebra, exact.
  std::vector<Mat2> gens;
  for (const auto& X : t.h.generators()) {
    Mat2 g = sig.k == 3 ? m * X * m.invert() : exactify_planar(X, m, sig.k);
    gens.push_back(snap_generator(g));
  }
  SubalgebraLabel label = classify_subalgebra(LieSub(sig.k, gens));
  Mat2 total = label.conjugator * m;

  std::string id;
  FamParam param = label.param;
  switch (label.tag) {
    case hfam::h0_s1: id = "(1.i)"; break;
    case hfam::halpha_s1: id = "(1.ii)"; break;
    case hfam::hinf_s1: id = "(1.ii)"; param = FamParam::infinity(); break;
    case hfam::h0_s2: id = "(2.i)"; break;
    case hfam::halpha_s2: id = "(2.ii)"; break;
    case hfam::hinf_s2: id = "(2.ii)"; param = FamParam::infinity(); break;
    case hfam::t0: id = "(3.i)"; break;
    case hfam::h0_s3: id = "(3.ii)"; break;
    case hfam::h1_s3: id = "(3.iii)"; break;
    case hfam::hinf_s3: id = "(3.iv)"; break;
    case hfam::hgamma0_s3: id = "(3.v)"; break;
    case hfam::k0_s3: id = "(3.vi)"; break;
    case hfam::kinf_s3: id = "(3.vii)"; break;
    case hfam::lgamma_s3: id = "(3.viii)"; break;
  }
  (void)tol;
  return {id, param, QElement(SymMat2::zero(), total)};
}

}  // namespace detail

/// Reduce a class-E triple to its MA-catalog entry with a conjugating
/// g(0, h). Two-dimensional Sigma goes through the dual and transposes
/// back (the witness becomes g(0, h^sharp)).
inline MAReduction ma_reduce(const Triple& t, double tol = 1e-9) {
  if (t.sigma.dim() == 0) throw error(errc::sigma_dim_zero, "Sigma has dimension 0");
  if (!is_class_E(t, tol)) throw error(errc::not_class_e, "triple is not in class E");
  if (t.sigma.dim() == 1) return detail::ma_reduce_dim1(t, tol);
  if (t.sigma.dim() != 2)
    throw error(errc::precondition_violated, "Sigma must have dimension 1 or 2");
  MAReduction inner = detail::ma_reduce_dim1(dual(t, tol), tol);
  return {detail::dual_id(inner.entry_id), inner.param,
          QElement(SymMat2::zero(), sharp(inner.conjugator.h()))};
}

/// Worst relative residual over sampled source elements conjugated into
/// the target triple: sigma-part distance to the span plus
/// homogeneous-part distance to the family, scaled by the sample size so
/// large group elements are judged by relative accuracy.
inline double verify_conjugation(const Triple& source, const Triple& target, const Mat4& W,
                                 double tol = 1e-9) {
  Mat4 Wi = W.invert();
  double worst = 0;
  auto samples = param_samples(source.h);
  // Thin out large grids; endpoints and center stay.
  size_t stride = samples.size() > 49 ? 6 : 1;
  for (size_t i = 0; i < samples.size(); i += stride) {
    for (const auto& sb : source.sigma.basis()) {
      QElement g = build_group_element(source, sb, samples[i], tol);
      Mat4 conj = W * g.realization() * Wi;
      double scale = std::max(1.0, conj.inf_norm());
      auto q = q_member(conj, std::max(tol, 1e-7) * scale);
      if (!q) return std::numeric_limits<double>::infinity();
      double rs = target.sigma.residual(q->sigma());
      double rh = target.h.residual(q->h());
      worst = std::max(worst, std::max(rs, rh) / scale);
    }
  }
  return worst;
}

}  // namespace sp2
