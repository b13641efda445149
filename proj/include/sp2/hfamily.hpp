#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sp2/matrix.hpp"

namespace sp2 {

/// Catalog tags for the connected subgroups of GL(2,R) that appear as
/// homogeneous components. All are images of R^n under continuous maps,
/// hence connected by construction.
enum class hfam {
  h0_s1,       // e^t R_theta, 2 params
  halpha_s1,   // e^t R_{alpha t}
  hinf_s1,     // R_t
  h0_s2,       // e^t A_s, 2 params
  halpha_s2,   // e^t A_{alpha t}
  hinf_s2,     // A_t
  t0,          // lower triangular, positive diagonal, 3 params
  h0_s3,       // [[1,0],[t,1]]
  h1_s3,       // e^t [[1,0],[t,1]]
  hinf_s3,     // e^t I
  hgamma0_s3,  // diag(e^{gamma t}, e^{(gamma+1)t})
  k0_s3,       // diag(e^t, e^s), 2 params
  kinf_s3,     // [[e^t,0],[s,e^t]], 2 params
  lgamma_s3,   // [[e^{gamma t},0],[s,e^{(gamma+1)t}]], 2 params
};

/// Family parameter: a rational value or the distinct value "infinity"
/// (infinity is a tag here, never a float).
struct FamParam {
  bool inf = false;
  Rational value = 0;

  static FamParam infinity() { FamParam p; p.inf = true; return p; }
  static FamParam of(const Rational& v) { FamParam p; p.value = v; return p; }

  friend bool operator==(const FamParam& a, const FamParam& b) {
    return a.inf == b.inf && (a.inf || a.value == b.value);
  }
  std::string str() const {
    if (inf) return "inf";
    std::ostringstream os;
    os << value;
    return os.str();
  }
};

inline Scalar exp_s(const Scalar& t) {
  if (t.is_zero()) return Scalar(1);
  return Scalar::approx(std::exp(t.to_double()));
}

/// A catalog-tagged parametrized connected subgroup of GL(2,R) with a
/// closed-form element map, Lie-algebra generators, and optional
/// transposition / conjugation wrappers.
class HFamily {
public:
  HFamily(hfam tag, FamParam param = {}, bool transposed = false,
          std::optional<Mat2> conjugator = std::nullopt)
      : tag_(tag), param_(param), transposed_(transposed), conj_(std::move(conjugator)) {
    if (conj_ && conj_->det().is_zero())
      throw error(errc::singular_matrix, "conjugator must be invertible");
  }

  hfam tag() const { return tag_; }
  const FamParam& param() const { return param_; }
  bool transposed() const { return transposed_; }
  const std::optional<Mat2>& conjugator() const { return conj_; }

  HFamily with_transposed() const {
    // Transposing conj(m, F) moves the conjugator to its sharp:
    // t(m f m^-1) = m^-sharp t(f) m^sharp.
    std::optional<Mat2> c = conj_;
    if (c) c = sharp(*c);
    return HFamily(tag_, param_, !transposed_, c);
  }
  HFamily with_conjugator(const Mat2& m) const { return HFamily(tag_, param_, transposed_, m); }
  HFamily base() const { return HFamily(tag_, param_); }

  int n_params() const {
    switch (tag_) {
      case hfam::t0: return 3;
      case hfam::h0_s1:
      case hfam::h0_s2:
      case hfam::k0_s3:
      case hfam::kinf_s3:
      case hfam::lgamma_s3: return 2;
      default: return 1;
    }
  }

  int dim() const { return tag_ == hfam::t0 ? 3 : n_params(); }

  Mat2 element(const std::vector<Scalar>& p) const {
    Mat2 e = base_element(p);
    if (transposed_) e = e.transpose();
    if (conj_) e = (*conj_) * e * conj_->invert();
    return e;
  }

  /// Exact Lie-algebra generators (after wrappers).
  std::vector<Mat2> generators() const {
    std::vector<Mat2> gens = base_generators();
    if (transposed_)
      for (auto& g : gens) g = g.transpose();
    if (conj_) {
      Mat2 mi = conj_->invert();
      for (auto& g : gens) g = (*conj_) * g * mi;
    }
    return gens;
  }

  /// Group law in parameter coordinates: element(compose(p,q)) =
  /// element(p) * element(q).
  std::vector<Scalar> compose_params(const std::vector<Scalar>& p,
                                     const std::vector<Scalar>& q) const {
    switch (tag_) {
      case hfam::kinf_s3:
        // (t,s)(t',s') = (t+t', s e^{t'} + s' e^t)
        return {p[0] + q[0], p[1] * exp_s(q[0]) + q[1] * exp_s(p[0])};
      case hfam::lgamma_s3: {
        Scalar g = gamma_scalar();
        return {p[0] + q[0],
                p[1] * exp_s(g * q[0]) + q[1] * exp_s((g + Scalar(1)) * p[0])};
      }
      case hfam::t0:
        // (u,v,s)(u',v',s') = (u+u', v+v', s e^{u'} + e^v s')
        return {p[0] + q[0], p[1] + q[1], p[2] * exp_s(q[0]) + exp_s(p[1]) * q[2]};
      default: {
        std::vector<Scalar> r(p.size());
        for (size_t i = 0; i < p.size(); ++i) r[i] = p[i] + q[i];
        return r;
      }
    }
  }

  std::vector<Scalar> invert_params(const std::vector<Scalar>& p) const {
    switch (tag_) {
      case hfam::kinf_s3:
        return {-p[0], -p[1] * exp_s(Scalar(-2) * p[0])};
      case hfam::lgamma_s3: {
        Scalar g = gamma_scalar();
        return {-p[0], -p[1] * exp_s(-(g + g + Scalar(1)) * p[0])};
      }
      case hfam::t0:
        return {-p[0], -p[1], -p[2] * exp_s(-p[0] - p[1])};
      default: {
        std::vector<Scalar> r(p.size());
        for (size_t i = 0; i < p.size(); ++i) r[i] = -p[i];
        return r;
      }
    }
  }

  /// Closed-form dagger pushforward h(p)^dagger[s] for the diagonal
  /// families: the action is coordinatewise with exponential-linear
  /// coefficients, so rational parameters with a vanishing exponent give
  /// exact results (the numeric route would multiply two exp calls).
  std::optional<SymMat2> exact_dagger(const std::vector<Scalar>& params,
                                      const SymMat2& s) const {
    if (conj_) return std::nullopt;
    for (const auto& p : params)
      if (!p.exact()) return std::nullopt;
    Scalar u, v;
    switch (tag_) {
      case hfam::hinf_s3: u = params[0]; v = params[0]; break;
      case hfam::hgamma0_s3:
        u = gamma_scalar() * params[0];
        v = (gamma_scalar() + Scalar(1)) * params[0];
        break;
      case hfam::k0_s3: u = params[0]; v = params[1]; break;
      default: return std::nullopt;
    }
    // diag(e^u, e^v) and its transpose act identically.
    return SymMat2(s.c * exp_s(Scalar(-2) * u), s.b * exp_s(-(u + v)),
                   s.a * exp_s(Scalar(-2) * v));
  }

  /// Parameters reproducing h, if h lies on the family (wrappers undone
  /// first). The reconstruction residual decides membership.
  std::optional<std::vector<Scalar>> project(Mat2 h, double tol) const {
    if (conj_) h = conj_->invert() * h * (*conj_);
    if (transposed_) h = h.transpose();
    auto p = base_project(h);
    if (!p) return std::nullopt;
    Mat2 rebuilt = base_element(*p);
    if (!approx_eq(rebuilt, h, tol)) return std::nullopt;
    return p;
  }

  /// Inf-norm distance from h to its closed-form reconstruction on the
  /// family; large when h is off the family entirely.
  double residual(Mat2 h) const {
    if (conj_) h = conj_->invert() * h * (*conj_);
    if (transposed_) h = h.transpose();
    auto p = base_project(h);
    if (!p) return std::numeric_limits<double>::infinity();
    return (base_element(*p) - h).inf_norm();
  }

  bool contains(const Mat2& h, double tol) const { return project(h, tol).has_value(); }

  std::string name() const {
    std::string n;
    switch (tag_) {
      case hfam::h0_s1: n = "H^0(sigma1)"; break;
      case hfam::halpha_s1: n = "H_alpha(sigma1)"; break;
      case hfam::hinf_s1: n = "H_inf(sigma1)"; break;
      case hfam::h0_s2: n = "H^0(sigma2)"; break;
      case hfam::halpha_s2: n = "H_alpha(sigma2)"; break;
      case hfam::hinf_s2: n = "H_inf(sigma2)"; break;
      case hfam::t0: n = "H^0(sigma3)"; break;
      case hfam::h0_s3: n = "H_0(sigma3)"; break;
      case hfam::h1_s3: n = "H_1(sigma3)"; break;
      case hfam::hinf_s3: n = "H_inf(sigma3)"; break;
      case hfam::hgamma0_s3: n = "H_gamma0(sigma3)"; break;
      case hfam::k0_s3: n = "K_0(sigma3)"; break;
      case hfam::kinf_s3: n = "K_inf(sigma3)"; break;
      case hfam::lgamma_s3: n = "L_gamma(sigma3)"; break;
    }
    if (has_param()) n += "[" + param_.str() + "]";
    if (transposed_) n = "t(" + n + ")";
    if (conj_) n = "conj(" + conj_->str() + ", " + n + ")";
    return n;
  }

  bool has_param() const {
    return tag_ == hfam::halpha_s1 || tag_ == hfam::halpha_s2 ||
           tag_ == hfam::hgamma0_s3 || tag_ == hfam::lgamma_s3;
  }

  static const std::vector<std::string>& valid_names() {
    static std::vector<std::string> names = {
        "H^0(sigma1)", "H_alpha(sigma1)", "H_inf(sigma1)",
        "H^0(sigma2)", "H_alpha(sigma2)", "H_inf(sigma2)",
        "H^0(sigma3)", "T^0", "H_0(sigma3)", "H_1(sigma3)", "H_inf(sigma3)",
        "H_gamma0(sigma3)", "K_0(sigma3)", "K_inf(sigma3)", "L_gamma(sigma3)"};
    return names;
  }

  static std::optional<hfam> tag_from_name(const std::string& n) {
    if (n == "H^0(sigma1)") return hfam::h0_s1;
    if (n == "H_alpha(sigma1)") return hfam::halpha_s1;
    if (n == "H_inf(sigma1)") return hfam::hinf_s1;
    if (n == "H^0(sigma2)") return hfam::h0_s2;
    if (n == "H_alpha(sigma2)") return hfam::halpha_s2;
    if (n == "H_inf(sigma2)") return hfam::hinf_s2;
    if (n == "H^0(sigma3)" || n == "T^0") return hfam::t0;
    if (n == "H_0(sigma3)") return hfam::h0_s3;
    if (n == "H_1(sigma3)") return hfam::h1_s3;
    if (n == "H_inf(sigma3)") return hfam::hinf_s3;
    if (n == "H_gamma0(sigma3)") return hfam::hgamma0_s3;
    if (n == "K_0(sigma3)") return hfam::k0_s3;
    if (n == "K_inf(sigma3)") return hfam::kinf_s3;
    if (n == "L_gamma(sigma3)") return hfam::lgamma_s3;
    return std::nullopt;
  }

private:
  Scalar gamma_scalar() const {
    if (param_.inf) throw error(errc::precondition_violated, "family parameter is infinity");
    return Scalar(param_.value);
  }

  Mat2 base_element(const std::vector<Scalar>& p) const {
    if (static_cast<int>(p.size()) != n_params())
      throw error(errc::precondition_violated, "wrong parameter count for " + name());
    switch (tag_) {
      case hfam::h0_s1: return scale_rot(p[0], p[1]);
      case hfam::halpha_s1: return scale_rot(p[0], gamma_scalar() * p[0]);
      case hfam::hinf_s1: return scale_rot(Scalar(0), p[0]);
      case hfam::h0_s2: return scale_boost(p[0], p[1]);
      case hfam::halpha_s2: return scale_boost(p[0], gamma_scalar() * p[0]);
      case hfam::hinf_s2: return scale_boost(Scalar(0), p[0]);
      case hfam::t0: return Mat2{exp_s(p[0]), Scalar(0), p[2], exp_s(p[1])};
      case hfam::h0_s3: return Mat2{Scalar(1), Scalar(0), p[0], Scalar(1)};
      case hfam::h1_s3: {
        Scalar et = exp_s(p[0]);
        return Mat2{et, Scalar(0), p[0] * et, et};
      }
      case hfam::hinf_s3: {
        Scalar et = exp_s(p[0]);
        return Mat2{et, Scalar(0), Scalar(0), et};
      }
      case hfam::hgamma0_s3: {
        Scalar g = gamma_scalar();
        return Mat2{exp_s(g * p[0]), Scalar(0), Scalar(0), exp_s((g + Scalar(1)) * p[0])};
      }
      case hfam::k0_s3: return Mat2{exp_s(p[0]), Scalar(0), Scalar(0), exp_s(p[1])};
      case hfam::kinf_s3: {
        Scalar et = exp_s(p[0]);
        return Mat2{et, Scalar(0), p[1], et};
      }
      case hfam::lgamma_s3: {
        Scalar g = gamma_scalar();
        return Mat2{exp_s(g * p[0]), Scalar(0), p[1], exp_s((g + Scalar(1)) * p[0])};
      }
    }
    throw error(errc::precondition_violated, "unreachable");
  }

  static Mat2 scale_rot(const Scalar& t, const Scalar& theta) {
    if (theta.is_zero()) {
      Scalar et = exp_s(t);
      return Mat2{et, Scalar(0), Scalar(0), et};
    }
    double r = std::exp(t.to_double());
    double th = theta.to_double();
    return Mat2{Scalar::approx(r * std::cos(th)), Scalar::approx(r * std::sin(th)),
                Scalar::approx(-r * std::sin(th)), Scalar::approx(r * std::cos(th))};
  }

  static Mat2 scale_boost(const Scalar& t, const Scalar& s) {
    if (s.is_zero()) {
      Scalar et = exp_s(t);
      return Mat2{et, Scalar(0), Scalar(0), et};
    }
    double r = std::exp(t.to_double());
    double v = s.to_double();
    return Mat2{Scalar::approx(r * std::cosh(v)), Scalar::approx(r * std::sinh(v)),
                Scalar::approx(r * std::sinh(v)), Scalar::approx(r * std::cosh(v))};
  }

  std::vector<Mat2> base_generators() const {
    Mat2 I = Mat2::identity();
    switch (tag_) {
      case hfam::h0_s1: return {I, mat_J2()};
      case hfam::halpha_s1: return {I + gamma_scalar() * mat_J2()};
      case hfam::hinf_s1: return {mat_J2()};
      case hfam::h0_s2: return {I, sigma5()};
      case hfam::halpha_s2: return {I + gamma_scalar() * sigma5()};
      case hfam::hinf_s2: return {sigma5()};
      case hfam::t0: return {I, sigma4(), mat_B()};
      case hfam::h0_s3: return {mat_B()};
      case hfam::h1_s3: return {I + mat_B()};
      case hfam::hinf_s3: return {I};
      case hfam::hgamma0_s3: return {gamma_scalar() * I + sigma4()};
      case hfam::k0_s3: return {I, sigma4()};
      case hfam::kinf_s3: return {I, mat_B()};
      case hfam::lgamma_s3: return {mat_B(), gamma_scalar() * I + sigma4()};
    }
    throw error(errc::precondition_violated, "unreachable");
  }

  std::optional<std::vector<Scalar>> base_project(const Mat2& h) const {
    double h00 = h(0, 0).to_double(), h01 = h(0, 1).to_double();
    double h10 = h(1, 0).to_double(), h11 = h(1, 1).to_double();
    double det = h00 * h11 - h01 * h10;
    auto ap = [](double v) { return Scalar::approx(v); };
    switch (tag_) {
      case hfam::h0_s1:
        if (det <= 0) return std::nullopt;
        return std::vector<Scalar>{ap(0.5 * std::log(det)), ap(std::atan2(h01, h00))};
      case hfam::hinf_s1:
        return std::vector<Scalar>{ap(std::atan2(h01, h00))};
      case hfam::halpha_s1: {
        // The rotation angle is periodic, so reconstruction from t alone
        // is well defined.
        if (det <= 0) return std::nullopt;
        return std::vector<Scalar>{ap(0.5 * std::log(det))};
      }
      case hfam::h0_s2: {
        if (h00 <= std::abs(h01) || det <= 0) return std::nullopt;
        return std::vector<Scalar>{ap(0.5 * std::log(det)), ap(std::atanh(h01 / h00))};
      }
      case hfam::hinf_s2:
        if (h00 <= std::abs(h01)) return std::nullopt;
        return std::vector<Scalar>{ap(std::atanh(h01 / h00))};
      case hfam::halpha_s2:
        if (h00 <= std::abs(h01) || det <= 0) return std::nullopt;
        return std::vector<Scalar>{ap(0.5 * std::log(det))};
      case hfam::t0:
        if (h00 <= 0 || h11 <= 0) return std::nullopt;
        return std::vector<Scalar>{ap(std::log(h00)), ap(std::log(h11)), h(1, 0)};
      case hfam::h0_s3:
        return std::vector<Scalar>{h(1, 0)};
      case hfam::h1_s3:
        if (h00 <= 0) return std::nullopt;
        return std::vector<Scalar>{ap(std::log(h00))};
      case hfam::hinf_s3:
        if (h00 <= 0) return std::nullopt;
        return std::vector<Scalar>{ap(std::log(h00))};
      case hfam::hgamma0_s3: {
        if (h00 <= 0 || h11 <= 0) return std::nullopt;
        double g = gamma_scalar().to_double();
        double t = (g * std::log(h00) + (g + 1) * std::log(h11)) / (g * g + (g + 1) * (g + 1));
        return std::vector<Scalar>{ap(t)};
      }
      case hfam::k0_s3:
        if (h00 <= 0 || h11 <= 0) return std::nullopt;
        return std::vector<Scalar>{ap(std::log(h00)), ap(std::log(h11))};
      case hfam::kinf_s3:
        if (h00 <= 0) return std::nullopt;
        return std::vector<Scalar>{ap(std::log(h00)), h(1, 0)};
      case hfam::lgamma_s3: {
        if (h00 <= 0 || h11 <= 0) return std::nullopt;
        double g = gamma_scalar().to_double();
        double t = (g * std::log(h00) + (g + 1) * std::log(h11)) / (g * g + (g + 1) * (g + 1));
        return std::vector<Scalar>{ap(t), h(1, 0)};
      }
    }
    return std::nullopt;
  }

  hfam tag_;
  FamParam param_;
  bool transposed_;
  std::optional<Mat2> conj_;
};

/// Default symmetric sampling grid {-2,-1,-1/2,0,1/2,1,2}.
inline const std::vector<Scalar>& sample_grid() {
  static std::vector<Scalar> g = {Scalar(-2), Scalar(-1), Scalar(-1, 2), Scalar(0),
                                  Scalar(1, 2), Scalar(1), Scalar(2)};
  return g;
}

/// All parameter tuples on the grid (cartesian power for multi-parameter
/// families).
inline std::vector<std::vector<Scalar>> param_samples(const HFamily& fam,
                                                      const std::vector<Scalar>& grid = sample_grid()) {
  int n = fam.n_params();
  std::vector<std::vector<Scalar>> out;
  std::vector<int> idx(n, 0);
  while (true) {
    std::vector<Scalar> tuple(n);
    for (int i = 0; i < n; ++i) tuple[i] = grid[idx[i]];
    out.push_back(tuple);
    int i = 0;
    for (; i < n; ++i) {
      if (++idx[i] < static_cast<int>(grid.size())) break;
      idx[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

}  // namespace sp2
