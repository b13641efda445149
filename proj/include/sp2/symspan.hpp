#pragma once

#include <algorithm>
#include <vector>

#include "sp2/matrix.hpp"

namespace sp2 {

/// A subspace of Sym(2,R) given by an exact basis, reduced to a canonical
/// echelon form over the coordinates (c, b, a) with unit pivots, so that
/// span{s} and span{-s} have the same representation.
class SymSpan {
public:
  SymSpan() = default;

  explicit SymSpan(std::vector<SymMat2> basis) {
    for (const auto& s : basis)
      if (!s.exact())
        throw error(errc::precondition_violated, "SymSpan basis must be exact");
    rows_.reserve(basis.size());
    for (const auto& s : basis) insert_exact(s);
  }

  static SymSpan span_of(const SymMat2& s) { return SymSpan({s}); }

  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<SymMat2>& basis() const { return rows_; }

  /// Exact membership for exact sigma; residual-based within tol otherwise.
  bool contains(const SymMat2& s, double tol = 0.0) const {
    return residual(s) <= (s.exact() && tol == 0.0 ? 0.0 : tol);
  }

  /// Inf-norm of (s - projection of s on the span), the defect distance.
  double residual(const SymMat2& s) const {
    SymMat2 r = reduce(s);
    return r.inf_norm();
  }

  /// s minus its span component (exact when s is exact).
  SymMat2 reduce(SymMat2 s) const {
    for (const auto& row : rows_) {
      int p = pivot_index(row);
      Scalar coeff = coord(s, p);
      if (coeff.is_zero()) continue;
      s = s - coeff * row;
    }
    return s;
  }

  /// Orthogonal complement under the trace pairing <s,t> = tr(st).
  SymSpan perp() const {
    // Solve <row_i, x> = 0 for x = (c, b, a); exact nullspace by
    // enumeration over the three coordinate directions.
    std::vector<SymMat2> gens;
    const SymMat2 dirs[3] = {SymMat2(1, 0, 0), SymMat2(0, 1, 0), SymMat2(0, 0, 1)};
    // Build the constraint matrix (dim x 3) and row reduce.
    int n = dim();
    std::vector<std::array<Scalar, 3>> m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = pairing(rows_[i], dirs[j]);
    // Gaussian elimination to find free columns.
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < 3 && r < n; ++c) {
      int pr = -1;
      for (int i = r; i < n; ++i)
        if (!m[i][c].is_zero()) { pr = i; break; }
      if (pr < 0) continue;
      std::swap(m[pr], m[r]);
      Scalar d = m[r][c];
      for (int j = 0; j < 3; ++j) m[r][j] = m[r][j] / d;
      for (int i = 0; i < n; ++i) {
        if (i == r || m[i][c].is_zero()) continue;
        Scalar f = m[i][c];
        for (int j = 0; j < 3; ++j) m[i][j] = m[i][j] - f * m[r][j];
      }
      pivots.push_back(c);
      ++r;
    }
    for (int c = 0; c < 3; ++c) {
      if (std::find(pivots.begin(), pivots.end(), c) != pivots.end()) continue;
      std::array<Scalar, 3> x{Scalar(0), Scalar(0), Scalar(0)};
      x[c] = Scalar(1);
      for (int i = 0; i < r; ++i) x[pivots[i]] = -m[i][c];
      gens.push_back(SymMat2(x[0], x[1], x[2]));
    }
    return SymSpan(gens);
  }

  /// Image under the dagger action of h (exact h required).
  SymSpan apply_dagger(const Mat2& h) const {
    std::vector<SymMat2> gens;
    for (const auto& s : rows_) gens.push_back(dagger(h, s));
    return SymSpan(gens);
  }

  friend bool operator==(const SymSpan& x, const SymSpan& y) {
    if (x.dim() != y.dim()) return false;
    for (int i = 0; i < x.dim(); ++i)
      if (!(x.rows_[i] == y.rows_[i])) return false;
    return true;
  }

  std::string str() const {
    std::string out = "span{";
    for (int i = 0; i < dim(); ++i) {
      out += rows_[i].str();
      if (i + 1 < dim()) out += ", ";
    }
    return out + "}";
  }

private:
  static Scalar coord(const SymMat2& s, int i) {
    return i == 0 ? s.c : (i == 1 ? s.b : s.a);
  }
  static int pivot_index(const SymMat2& s) {
    if (!s.c.is_zero()) return 0;
    if (!s.b.is_zero()) return 1;
    return 2;
  }

  void insert_exact(SymMat2 s) {
    s = reduce(s);
    if (s.is_zero()) return;
    int p = pivot_index(s);
    s = (Scalar(1) / coord(s, p)) * s;
    // Back-substitute into existing rows and keep rows ordered by pivot.
    for (auto& row : rows_) {
      Scalar coeff = coord(row, p);
      if (!coeff.is_zero()) row = row - coeff * s;
    }
    rows_.push_back(s);
    std::sort(rows_.begin(), rows_.end(),
              [](const SymMat2& x, const SymMat2& y) { return pivot_index(x) < pivot_index(y); });
  }

  std::vector<SymMat2> rows_;
};

inline SymSpan span_sigma1() { return SymSpan::span_of(sym_sigma1()); }
inline SymSpan span_sigma2() { return SymSpan::span_of(sym_sigma2()); }
inline SymSpan span_sigma3() { return SymSpan::span_of(sym_sigma3()); }
inline SymSpan span_sigma4_perp() { return SymSpan({sym_sigma3(), sym_sigma5()}); }

}  // namespace sp2
