#pragma once

#include <algorithm>
#include <optional>

#include "core.hpp"

namespace gkz {

struct IntMatrix {
  size_t rows = 0, cols = 0;
  std::vector<Int> a;  // row-major

  IntMatrix() = default;
  IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    for (auto& row : init)
      for (auto x : row) a.emplace_back(x);
  }
  Int& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const Int& operator()(size_t i, size_t j) const { return a[i * cols + j]; }
  bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  static IntMatrix identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  IntVec col(size_t j) const {
    IntVec v(rows);
    for (size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }
  IntVec row(size_t i) const {
    IntVec v(cols);
    for (size_t j = 0; j < cols; ++j) v[j] = (*this)(i, j);
    return v;
  }
  IntMatrix transposed() const {
    IntMatrix t(cols, rows);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  IntVec apply(const IntVec& x) const {
    IntVec y(rows, Int(0));
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }
  RatVec apply(const RatVec& x) const {
    RatVec y(rows, Rat(0));
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) y[i] += Rat((*this)(i, j)) * x[j];
    return y;
  }
  std::string str() const {
    std::string s;
    for (size_t i = 0; i < rows; ++i) {
      if (i) s += "; ";
      for (size_t j = 0; j < cols; ++j) {
        if (j) s += " ";
        s += to_string((*this)(i, j));
      }
    }
    return s;
  }
};

namespace detail {
inline void swap_rows(IntMatrix& m, size_t i, size_t j) {
  for (size_t k = 0; k < m.cols; ++k) std::swap(m(i, k), m(j, k));
}
inline void swap_cols(IntMatrix& m, size_t i, size_t j) {
  for (size_t k = 0; k < m.rows; ++k) std::swap(m(k, i), m(k, j));
}
// row_i += q * row_j
inline void add_row(IntMatrix& m, size_t i, size_t j, const Int& q) {
  for (size_t k = 0; k < m.cols; ++k) m(i, k) += q * m(j, k);
}
inline void add_col(IntMatrix& m, size_t i, size_t j, const Int& q) {
  for (size_t k = 0; k < m.rows; ++k) m(k, i) += q * m(k, j);
}
inline void negate_row(IntMatrix& m, size_t i) {
  for (size_t k = 0; k < m.cols; ++k) m(i, k) = -m(i, k);
}
inline void negate_col(IntMatrix& m, size_t j) {
  for (size_t k = 0; k < m.rows; ++k) m(k, j) = -m(k, j);
}
}  // namespace detail

struct SmithResult {
  IntMatrix U, S, V;  // U*m*V = S
};

// Smith normal form. Pivot choice: smallest nonzero absolute value in the
// remaining block, first (row-major) index on ties, so the transforms are
// reproducible across runs.
inline SmithResult smith_normal_form(const IntMatrix& m) {
  size_t d = m.rows, n = m.cols;
  SmithResult r{IntMatrix::identity(d), m, IntMatrix::identity(n)};
  IntMatrix& S = r.S;
  using namespace detail;
  size_t k = 0;
  while (k < d && k < n) {
    // locate pivot
    size_t pi = d, pj = n;
    Int best = 0;
    for (size_t i = k; i < d; ++i)
      for (size_t j = k; j < n; ++j)
        if (S(i, j) != 0 && (best == 0 || iabs(S(i, j)) < best)) {
          best = iabs(S(i, j));
          pi = i;
          pj = j;
        }
    if (pi == d) break;  // rest is zero
    if (pi != k) { swap_rows(S, k, pi); swap_rows(r.U, k, pi); }
    if (pj != k) { swap_cols(S, k, pj); swap_cols(r.V, k, pj); }
    // clear row/column k
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t i = k + 1; i < d; ++i)
        if (S(i, k) != 0) {
          Int q = S(i, k) / S(k, k);
          add_row(S, i, k, -q);
          add_row(r.U, i, k, -q);
          if (S(i, k) != 0) {  // remainder smaller than pivot: swap up, restart
            swap_rows(S, k, i);
            swap_rows(r.U, k, i);
            dirty = true;
          }
        }
      for (size_t j = k + 1; j < n; ++j)
        if (S(k, j) != 0) {
          Int q = S(k, j) / S(k, k);
          add_col(S, j, k, -q);
          add_col(r.V, j, k, -q);
          if (S(k, j) != 0) {
            swap_cols(S, k, j);
            swap_cols(r.V, k, j);
            dirty = true;
          }
        }
      if (!dirty) {
        // divisibility fix-up: pivot must divide every remaining entry
        for (size_t i = k + 1; i < d && !dirty; ++i)
          for (size_t j = k + 1; j < n && !dirty; ++j)
            if (S(i, j) % S(k, k) != 0) {
              add_row(S, k, i, 1);
              add_row(r.U, k, i, 1);
              dirty = true;
            }
      }
    }
    if (S(k, k) < 0) { negate_row(S, k); negate_row(r.U, k); }
    ++k;
  }
  return r;
}

inline IntVec snf_diagonal(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  size_t k = std::min(m.rows, m.cols);
  IntVec d;
  for (size_t i = 0; i < k; ++i)
    if (s.S(i, i) != 0) d.push_back(s.S(i, i));
  return d;
}

// Row-style Hermite normal form of the lattice spanned by the given row
// vectors: echelon rows, positive pivots, entries above a pivot reduced into
// [0, pivot). Zero rows dropped. This is the canonical form used whenever a
// lattice basis is part of a contract.
inline std::vector<IntVec> hnf_rows(std::vector<IntVec> rows) {
  if (rows.empty()) return rows;
  size_t n = rows[0].size();
  size_t r = 0;  // next pivot row
  for (size_t c = 0; c < n && r < rows.size(); ++c) {
    // gcd-eliminate column c below row r
    while (true) {
      size_t pi = rows.size();
      Int best = 0;
      for (size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == 0 || iabs(rows[i][c]) < best)) {
          best = iabs(rows[i][c]);
          pi = i;
        }
      if (pi == rows.size()) break;  // column clear
      std::swap(rows[r], rows[pi]);
      bool any = false;
      for (size_t i = r + 1; i < rows.size(); ++i)
        if (rows[i][c] != 0) {
          Int q = rows[i][c] / rows[r][c];
          for (size_t k = 0; k < n; ++k) rows[i][k] -= q * rows[r][k];
          if (rows[i][c] != 0) any = true;
        }
      if (!any) break;
    }
    if (rows[r][c] != 0) {
      if (rows[r][c] < 0)
        for (size_t k = 0; k < n; ++k) rows[r][k] = -rows[r][k];
      // reduce the rows above
      for (size_t i = 0; i < r; ++i) {
        Int q = rows[i][c] / rows[r][c];
        if (rows[i][c] % rows[r][c] < 0) --q;
        if (q != 0)
          for (size_t k = 0; k < n; ++k) rows[i][k] -= q * rows[r][k];
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

// basis of {u in Z^n : m.u = 0}, HNF-canonicalized
inline std::vector<IntVec> kernel_basis(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  size_t rank = 0;
  for (size_t i = 0; i < std::min(m.rows, m.cols); ++i)
    if (s.S(i, i) != 0) ++rank;
  std::vector<IntVec> basis;
  for (size_t j = rank; j < m.cols; ++j) basis.push_back(s.V.col(j));
  return hnf_rows(basis);
}

inline size_t rank_of(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  size_t r = 0;
  for (size_t i = 0; i < std::min(m.rows, m.cols); ++i)
    if (s.S(i, i) != 0) ++r;
  return r;
}

inline size_t rank_of(const std::vector<IntVec>& vecs) {
  if (vecs.empty()) return 0;
  IntMatrix m(vecs.size(), vecs[0].size());
  for (size_t i = 0; i < vecs.size(); ++i)
    for (size_t j = 0; j < vecs[0].size(); ++j) m(i, j) = vecs[i][j];
  return rank_of(m);
}

// determinant (fraction-free Gaussian elimination)
inline Int det(IntMatrix m) {
  if (m.rows != m.cols) throw GkzError("DimensionMismatch", "det of non-square matrix");
  size_t n = m.rows;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      detail::swap_rows(m, k, p);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return n ? Int(sign) * m(n - 1, n - 1) : Int(1);
}

// rational linear solve: one solution of m.x = b, or nullopt
inline std::optional<RatVec> solve_rational(const IntMatrix& m, const RatVec& b) {
  size_t d = m.rows, n = m.cols;
  std::vector<RatVec> t(d, RatVec(n + 1, Rat(0)));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < n; ++j) t[i][j] = Rat(m(i, j));
    t[i][n] = b[i];
  }
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < n && r < d; ++c) {
    size_t p = r;
    while (p < d && t[p][c] == 0) ++p;
    if (p == d) continue;
    std::swap(t[r], t[p]);
    Rat pv = t[r][c];
    for (size_t j = c; j <= n; ++j) t[r][j] /= pv;
    for (size_t i = 0; i < d; ++i)
      if (i != r && t[i][c] != 0) {
        Rat f = t[i][c];
        for (size_t j = c; j <= n; ++j) t[i][j] -= f * t[r][j];
      }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < d; ++i)
    if (t[i][n] != 0) return std::nullopt;
  RatVec x(n, Rat(0));
  for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = t[i][n];
  return x;
}

// integer linear solve via SNF: one solution of m.x = b over Z, or nullopt
inline std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& b) {
  auto s = smith_normal_form(m);
  IntVec ub = s.U.apply(b);
  size_t n = m.cols;
  IntVec w(n, Int(0));
  size_t k = std::min(m.rows, m.cols);
  for (size_t i = 0; i < m.rows; ++i) {
    Int sii = (i < k) ? s.S(i, i) : Int(0);
    if (sii == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % sii != 0) return std::nullopt;
      w[i] = ub[i] / sii;
    }
  }
  return s.V.apply(w);
}

// inverse of a unimodular integer matrix
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
  size_t n = m.rows;
  IntMatrix inv(n, n);
  for (size_t j = 0; j < n; ++j) {
    RatVec e(n, Rat(0));
    e[j] = 1;
    auto x = solve_rational(m, e);
    if (!x) throw GkzError("Singular", "matrix not invertible");
    for (size_t i = 0; i < n; ++i) {
      if (!is_integer((*x)[i])) throw GkzError("Singular", "matrix not unimodular");
      inv(i, j) = num((*x)[i]);
    }
  }
  return inv;
}

// index of lattice(sub) inside lattice(sup); infinity encoded as nullopt
inline std::optional<Int> lattice_index(const std::vector<IntVec>& sub,
                                        const std::vector<IntVec>& sup) {
  if (sub.empty()) {
    if (sup.empty() || rank_of(sup) == 0) return Int(1);
    return std::nullopt;
  }
  size_t dim = sub[0].size();
  auto supb = hnf_rows(sup);
  IntMatrix supm(supb.size(), dim);
  for (size_t i = 0; i < supb.size(); ++i)
    for (size_t j = 0; j < dim; ++j) supm(i, j) = supb[i][j];
  // express each sub vector in sup-basis coordinates (solve supm^T c = v)
  IntMatrix supt = supm.transposed();
  std::vector<IntVec> coords;
  for (const auto& v : sub) {
    RatVec rb(v.size());
    for (size_t i = 0; i < v.size(); ++i) rb[i] = Rat(v[i]);
    auto c = solve_rational(supt, rb);
    if (!c) throw GkzError("SpanViolation", "sub vector " + vec_string(v) + " outside span(sup)");
    IntVec ci(c->size());
    for (size_t i = 0; i < c->size(); ++i) {
      if (!is_integer((*c)[i]))
        throw GkzError("NotSublattice", "sub vector " + vec_string(v) + " not in lattice(sup)");
      ci[i] = num((*c)[i]);
    }
    coords.push_back(ci);
  }
  auto h = hnf_rows(coords);
  if (h.size() < supb.size()) return std::nullopt;  // rank drop: infinite index
  Int idx = 1;
  size_t c = 0;
  for (size_t i = 0; i < h.size(); ++i) {
    while (c < h[i].size() && h[i][c] == 0) ++c;
    idx *= h[i][c];
  }
  return idx;
}

// Z-basis of span_Q(vecs) ∩ Z^n (the saturation of the lattice they generate)
inline std::vector<IntVec> saturated_span_basis(const std::vector<IntVec>& vecs, size_t n) {
  std::vector<IntVec> nz;
  for (const auto& v : vecs)
    if (std::any_of(v.begin(), v.end(), [](const Int& x) { return x != 0; })) nz.push_back(v);
  if (nz.empty()) return {};
  IntMatrix m(nz.size(), n);
  for (size_t i = 0; i < nz.size(); ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) = nz[i][j];
  auto ortho = kernel_basis(m);  // basis of {y : vecs . y = 0}
  if (ortho.empty()) {
    std::vector<IntVec> full;
    for (size_t i = 0; i < n; ++i) {
      IntVec e(n, Int(0));
      e[i] = 1;
      full.push_back(e);
    }
    return full;
  }
  IntMatrix om(ortho.size(), n);
  for (size_t i = 0; i < ortho.size(); ++i)
    for (size_t j = 0; j < n; ++j) om(i, j) = ortho[i][j];
  return kernel_basis(om);
}

}  // namespace gkz
