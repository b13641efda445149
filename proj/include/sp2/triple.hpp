#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sp2/hfamily.hpp"
#include "sp2/parabolic.hpp"
#include "sp2/symspan.hpp"

namespace sp2 {

inline std::string param_key(const std::vector<Scalar>& p) {
  std::string k;
  for (const auto& s : p) { k += s.str(); k += ";"; }
  return k;
}

/// Section defect map tau : H -> Sym(2,R) with tau(I) = 0.
class TauMap {
public:
  enum class kind { zero, coboundary, homomorphic, sampled };

  TauMap() : kind_(kind::zero) {}

  static TauMap zero() { return TauMap(); }

  static TauMap coboundary(SymMat2 tau0) {
    TauMap t;
    t.kind_ = kind::coboundary;
    t.tau0_ = std::move(tau0);
    return t;
  }

  static TauMap homomorphic(std::function<SymMat2(const std::vector<Scalar>&)> fn) {
    TauMap t;
    t.kind_ = kind::homomorphic;
    t.fn_   = std::move(fn);
    return t;
  }

  static TauMap sampled(std::map<std::string, SymMat2> table) {
    TauMap t;
    t.kind_  = kind::sampled;
    t.table_ = std::move(table);
    return t;
  }

  kind which() const { return kind_; }
  const SymMat2& tau0() const { return tau0_; }

  /// tau at the group element h = family(params).
  SymMat2 eval(const Mat2& h, const std::vector<Scalar>& params) const {
    switch (kind_) {
      case kind::zero: return SymMat2::zero();
      case kind::coboundary: return tau0_ - dagger(h, tau0_);
      case kind::homomorphic: return fn_(params);
      case kind::sampled: {
        auto it = table_.find(param_key(params));
        if (it == table_.end())
          throw error(errc::insufficient_samples, "tau table has no entry for these parameters");
        return it->second;
      }
    }
    return SymMat2::zero();
  }

private:
  kind kind_;
  SymMat2 tau0_;
  std::function<SymMat2(const std::vector<Scalar>&)> fn_;
  std::map<std::string, SymMat2> table_;
};

/// The (Sigma, H, tau) model of a Lie subgroup of Q.
struct Triple {
  SymSpan sigma;
  HFamily h;
  TauMap tau;

  Triple(SymSpan s, HFamily fam, TauMap t = TauMap::zero())
      : sigma(std::move(s)), h(std::move(fam)), tau(std::move(t)) {}
};

/// g(sigma + tau(h(params)), h(params)); sigma must lie in the span.
inline QElement build_group_element(const Triple& t, const SymMat2& sigma,
                                    const std::vector<Scalar>& params, double tol = 1e-9) {
  if (!t.sigma.contains(sigma, sigma.exact() ? 0.0 : tol))
    throw error(errc::sigma_not_in_span, "sigma is not in the vector component");
  Mat2 h = t.h.element(params);
  return QElement(sigma + t.tau.eval(h, params), h);
}

struct CocycleReport {
  bool pass = true;
  double worst_defect = 0.0;
  int pairs_checked = 0;
};

/// Checks tau(h) + h^dagger[tau(h')] - tau(hh') in Sigma over sampled
/// parameter pairs.
inline CocycleReport check_cocycle(const Triple& t,
                                   const std::vector<std::pair<std::vector<Scalar>,
                                                               std::vector<Scalar>>>& pairs,
                                   double tol = 1e-9) {
  CocycleReport rep;
  for (const auto& [p, q] : pairs) {
    Mat2 h  = t.h.element(p);
    Mat2 h2 = t.h.element(q);
    auto pq = t.h.compose_params(p, q);
    SymMat2 tau2 = t.tau.eval(h2, q);
    SymMat2 pushed = t.h.exact_dagger(p, tau2).value_or(dagger(h, tau2));
    SymMat2 defect = t.tau.eval(h, p) + pushed - t.tau.eval(h * h2, pq);
    double d = t.sigma.residual(defect);
    rep.worst_defect = std::max(rep.worst_defect, d);
    ++rep.pairs_checked;
    bool all_exact = defect.exact();
    if (d > (all_exact ? 0.0 : tol)) rep.pass = false;
  }
  return rep;
}

inline std::vector<std::pair<std::vector<Scalar>, std::vector<Scalar>>>
sample_pairs(const HFamily& fam, const std::vector<Scalar>& grid = sample_grid()) {
  auto singles = param_samples(fam, grid);
  std::vector<std::pair<std::vector<Scalar>, std::vector<Scalar>>> out;
  // Cap the quadratic blowup for multi-parameter families.
  size_t stride = singles.size() > 49 ? 7 : 1;
  for (size_t i = 0; i < singles.size(); i += (singles.size() > 49 ? stride : 1))
    for (size_t j = 0; j < singles.size(); j += stride) out.push_back({singles[i], singles[j]});
  return out;
}

/// tau' and tau define the same group iff their difference lies in Sigma
/// pointwise.
inline bool tau_equivalent(const TauMap& t1, const TauMap& t2, const SymSpan& sigma,
                           const HFamily& fam,
                           const std::vector<std::vector<Scalar>>& samples, double tol = 1e-9) {
  for (const auto& p : samples) {
    Mat2 h = fam.element(p);
    SymMat2 diff = t2.eval(h, p) - t1.eval(h, p);
    if (!sigma.contains(diff, diff.exact() ? 0.0 : tol)) return false;
  }
  return true;
}

/// Solve tau(h_i) = tau0 - h_i^dagger[tau0] for tau0 by stacked least
/// squares over the coordinates (c, b, a); none when inconsistent.
inline std::optional<SymMat2> detect_coboundary(const TauMap& tau, const HFamily& fam,
                                                const std::vector<std::vector<Scalar>>& samples,
                                                double tol = 1e-9) {
  if (samples.size() < 3)
    throw error(errc::insufficient_samples, "need at least 3 samples to fit a coboundary");
  const SymMat2 dirs[3] = {SymMat2(1, 0, 0), SymMat2(0, 1, 0), SymMat2(0, 0, 1)};
  std::vector<std::array<double, 3>> rows;
  std::vector<double> rhs;
  for (const auto& p : samples) {
    Mat2 h = fam.element(p);
    SymMat2 tv = tau.eval(h, p);
    // Row block: (I - D_h) x = tau(h), coordinatewise.
    std::array<SymMat2, 3> cols;
    for (int j = 0; j < 3; ++j) cols[j] = dirs[j] - dagger(h, dirs[j]);
    auto coord = [](const SymMat2& s, int i) {
      return i == 0 ? s.c.to_double() : (i == 1 ? s.b.to_double() : s.a.to_double());
    };
    for (int i = 0; i < 3; ++i) {
      rows.push_back({coord(cols[0], i), coord(cols[1], i), coord(cols[2], i)});
      rhs.push_back(coord(tv, i));
    }
  }
  // Normal equations, 3x3.
  double A[3][3] = {}, b[3] = {};
  for (size_t r = 0; r < rows.size(); ++r) {
    for (int i = 0; i < 3; ++i) {
      b[i] += rows[r][i] * rhs[r];
      for (int j = 0; j < 3; ++j) A[i][j] += rows[r][i] * rows[r][j];
    }
  }
  // Gaussian elimination with pivoting; singular system means a kernel,
  // pick the minimum-norm-ish solution by dropping free columns.
  double x[3] = {};
  {
    double M[3][4];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) M[i][j] = A[i][j];
      M[i][3] = b[i];
    }
    int prow = 0;
    int pivcol[3] = {-1, -1, -1};
    for (int c = 0; c < 3 && prow < 3; ++c) {
      int best = -1;
      double mag = 1e-12;
      for (int r = prow; r < 3; ++r)
        if (std::abs(M[r][c]) > mag) { best = r; mag = std::abs(M[r][c]); }
      if (best < 0) continue;
      std::swap(M[best], M[prow]);
      double d = M[prow][c];
      for (int j = 0; j < 4; ++j) M[prow][j] /= d;
      for (int r = 0; r < 3; ++r) {
        if (r == prow) continue;
        double f = M[r][c];
        for (int j = 0; j < 4; ++j) M[r][j] -= f * M[prow][j];
      }
      pivcol[prow] = c;
      ++prow;
    }
    for (int r = 0; r < prow; ++r) x[pivcol[r]] = M[r][3];
  }
  // Consistency check against the original stacked system.
  double worst = 0;
  for (size_t r = 0; r < rows.size(); ++r) {
    double v = rows[r][0] * x[0] + rows[r][1] * x[1] + rows[r][2] * x[2] - rhs[r];
    worst = std::max(worst, std::abs(v));
  }
  if (worst > tol) return std::nullopt;
  auto snap = [tol](double v) -> Scalar {
    Rational r = rationalize(v, 1000);
    if (std::abs(r.convert_to<double>() - v) <= 100 * tol) return Scalar(r);
    return Scalar::approx(v);
  };
  return SymMat2(snap(x[0]), snap(x[1]), snap(x[2]));
}

/// Class E: tau equivalent to zero, with nontrivial connected factors.
inline bool is_class_E(const Triple& t, double tol = 1e-9) {
  if (t.sigma.dim() < 1 || t.h.dim() < 1) return false;
  return tau_equivalent(t.tau, TauMap::zero(), t.sigma, t.h, param_samples(t.h), tol);
}

/// (Sigma, H, 0) -> (Sigma^perp, tH, 0).
inline Triple dual(const Triple& t, double tol = 1e-9) {
  if (!tau_equivalent(t.tau, TauMap::zero(), t.sigma, t.h, param_samples(t.h), tol))
    throw error(errc::tau_not_zero, "dual requires tau equivalent to zero");
  return Triple(t.sigma.perp(), t.h.with_transposed(), TauMap::zero());
}

/// H-invariance of Sigma over sampled elements and basis vectors.
inline bool check_h_invariance(const SymSpan& sigma, const HFamily& fam,
                               const std::vector<std::vector<Scalar>>& samples,
                               double tol = 1e-9) {
  for (const auto& p : samples) {
    Mat2 h = fam.element(p);
    for (const auto& s : sigma.basis()) {
      SymMat2 img = dagger(h, s);
      if (!sigma.contains(img, img.exact() ? 0.0 : tol)) return false;
    }
  }
  return true;
}

/// Result of reading a triple off a finite set of group elements.
struct ExtractedTriple {
  SymSpan sigma;
  std::vector<Mat2> h_samples;
  std::vector<SymMat2> sigma_parts_at_identity;
  bool discrete_sigma = false;
  bool trivial = false;
};

/// Recover (Sigma, H-samples) from sampled 4x4 elements. Elements whose
/// homogeneous part is the identity contribute their sigma-parts; when
/// those are quantized away from zero (no sample with norm below the
/// lattice threshold) the group has a disconnected vector component and
/// DiscreteSigma is flagged instead of treating the span as Sigma.
inline ExtractedTriple extract_triple(const std::vector<Mat4>& elements, double tol = 1e-9,
                                      double lattice_threshold = 1.0) {
  ExtractedTriple out;
  std::vector<SymMat2> at_identity;
  for (const auto& m : elements) {
    auto q = q_member(m, tol);
    if (!q) throw error(errc::not_in_q, "element is not in Q");
    out.h_samples.push_back(q->h());
    if (approx_eq(q->h(), Mat2::identity(), tol)) at_identity.push_back(q->sigma());
  }
  out.sigma_parts_at_identity = at_identity;
  double min_nonzero = std::numeric_limits<double>::infinity();
  std::vector<SymMat2> exact_gens;
  for (const auto& s : at_identity) {
    double n = s.inf_norm();
    if (n > tol) min_nonzero = std::min(min_nonzero, n);
    if (s.exact()) {
      exact_gens.push_back(s);
    } else {
      // Snap float sigma-parts to nearby rationals for the span.
      auto snap = [tol](const Scalar& v) -> Scalar {
        Rational r = rationalize(v.to_double(), 1000000);
        if (std::abs(r.convert_to<double>() - v.to_double()) <= 100 * tol) return Scalar(r);
        return Scalar(rationalize(v.to_double(), 1000000000));
      };
      exact_gens.push_back(SymMat2(snap(s.c), snap(s.b), snap(s.a)));
    }
  }
  out.sigma = SymSpan(exact_gens);
  if (out.sigma.dim() == 0 && out.h_samples.size() <= 1) out.trivial = true;
  if (std::isfinite(min_nonzero) && min_nonzero >= lattice_threshold) out.discrete_sigma = true;
  return out;
}

}  // namespace sp2
