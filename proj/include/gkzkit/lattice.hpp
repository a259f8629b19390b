#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>

#include "fourier_motzkin.hpp"
#include "linalg.hpp"

namespace gkz {

enum class TriState { Unknown, Yes, No };

// A with its structural flags. Construct through validate(); the throwing
// constructor path keeps every GkzMatrix full and pointed by construction.
struct GkzMatrix {
  IntMatrix matrix;
  bool full = false;
  bool pointed = false;
  IntVec positive_functional;               // primitive h with h.a_j > 0
  std::optional<RatVec> homogeneity_row;    // h with h.A = (1,...,1)
  TriState saturated = TriState::Unknown;
  std::optional<IntVec> hole_witness;       // set when saturated == No

  size_t d() const { return matrix.rows; }
  size_t n() const { return matrix.cols; }
  IntVec column(size_t j) const { return matrix.col(j); }
  bool homogeneous() const { return homogeneity_row.has_value(); }
};

// feasibility of h.a_j >= 1 for all columns; produces the functional or a
// Farkas combination of the columns summing to zero
inline FMResult pointedness_lp(const IntMatrix& m) {
  std::vector<LinIneq> sys;
  for (size_t j = 0; j < m.cols; ++j) {
    LinIneq iq;
    iq.c.resize(m.rows);
    for (size_t i = 0; i < m.rows; ++i) iq.c[i] = Rat(m(i, j));
    iq.rhs = 1;
    sys.push_back(std::move(iq));
  }
  return fm_feasible(sys, m.rows);
}

inline GkzMatrix validate(const IntMatrix& m) {
  GkzMatrix g;
  g.matrix = m;
  auto snf = smith_normal_form(m);
  bool full = true;
  for (size_t i = 0; i < m.rows; ++i)
    if (i >= m.cols || snf.S(i, i) != 1) full = false;
  if (!full)
    throw GkzError("NotFull", "ZA != Z^" + std::to_string(m.rows),
                   "SNF diagonal " + snf.S.str());
  g.full = true;
  auto lp = pointedness_lp(m);
  if (!lp.feasible) {
    // some column enters with positive multiplier: +-a_j both lie in the cone
    std::string cert = "zero combination of columns with multipliers " + vec_string(lp.farkas);
    throw GkzError("NotPointed", "cone of columns contains a line", cert);
  }
  g.pointed = true;
  g.positive_functional = primitive(lp.point);
  RatVec ones(m.cols, Rat(1));
  g.homogeneity_row = solve_rational(m.transposed(), ones);
  return g;
}

// ---- semigroup membership --------------------------------------------------

// b in NA?  Exact search; termination from the positive functional.
inline bool semigroup_member(const GkzMatrix& g, const IntVec& b) {
  const IntMatrix& A = g.matrix;
  Int deg = dot(g.positive_functional, b);
  if (deg < 0) return false;
  std::map<std::pair<size_t, IntVec>, bool> memo;
  std::function<bool(size_t, const IntVec&)> rec = [&](size_t j, const IntVec& v) -> bool {
    if (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; })) return true;
    if (j == A.cols) return false;
    auto key = std::make_pair(j, v);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool ok = rec(j + 1, v);  // skip column j
    if (!ok) {
      IntVec w = v;
      Int cdeg = dot(g.positive_functional, A.col(j));
      while (!ok) {
        Int wdeg = 0;
        for (size_t i = 0; i < w.size(); ++i) w[i] -= A(i, j);
        wdeg = dot(g.positive_functional, w);
        if (wdeg < 0) break;
        ok = rec(j + 1, w);
        (void)cdeg;
      }
    }
    memo[key] = ok;
    return ok;
  };
  return rec(0, b);
}

// x in R>=0 A ?  (exact LP feasibility: A.lambda = x, lambda >= 0)
inline bool cone_member(const IntMatrix& A, const RatVec& x) {
  size_t n = A.cols, d = A.rows;
  std::vector<LinIneq> sys;
  for (size_t i = 0; i < d; ++i) {
    LinIneq eq1, eq2;
    eq1.c.resize(n);
    for (size_t j = 0; j < n; ++j) eq1.c[j] = Rat(A(i, j));
    eq1.rhs = x[i];
    eq2.c = eq1.c;
    for (auto& q : eq2.c) q = -q;
    eq2.rhs = -x[i];
    sys.push_back(std::move(eq1));
    sys.push_back(std::move(eq2));
  }
  for (size_t j = 0; j < n; ++j) {
    LinIneq iq;
    iq.c.assign(n, Rat(0));
    iq.c[j] = 1;
    iq.rhs = 0;
    sys.push_back(std::move(iq));
  }
  return fm_feasible(sys, n).feasible;
}

inline bool cone_member(const IntMatrix& A, const IntVec& x) {
  RatVec q(x.size());
  for (size_t i = 0; i < x.size(); ++i) q[i] = Rat(x[i]);
  return cone_member(A, q);
}

namespace detail {
// integer points of the zonotope {sum lambda_j a_j : 0 <= lambda_j <= 1}
// bounding box, filtered by exact cone membership
template <class Fn>
void for_cone_points_in_zonotope_box(const IntMatrix& A, const Fn& fn) {
  size_t d = A.rows;
  IntVec lo(d, Int(0)), hi(d, Int(0));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < A.cols; ++j) {
      if (A(i, j) < 0) lo[i] += A(i, j);
      else hi[i] += A(i, j);
    }
  IntVec x = lo;
  while (true) {
    if (cone_member(A, x)) fn(x);
    size_t i = 0;
    while (i < d && x[i] == hi[i]) { x[i] = lo[i]; ++i; }
    if (i == d) break;
    ++x[i];
  }
}
}  // namespace detail

struct SaturationResult {
  TriState state = TriState::Unknown;
  std::optional<IntVec> witness;  // a hole when No
  std::string certificate;
};

// Bounded saturation test. Any bound >= 1 already decides: every Hilbert
// basis element of (cone ∩ Z^d) is a lattice point of the lambda in [0,1]
// zonotope, so scanning that region against NA-membership is conclusive.
inline SaturationResult is_saturated(const GkzMatrix& g, const Int& bound = 1) {
  SaturationResult res;
  if (bound < 1) return res;  // Unknown by contract
  std::optional<IntVec> hole;
  detail::for_cone_points_in_zonotope_box(g.matrix, [&](const IntVec& x) {
    if (!hole && !semigroup_member(g, x)) hole = x;
  });
  if (hole) {
    res.state = TriState::No;
    res.witness = hole;
    res.certificate = "hole " + vec_string(*hole) + " in cone lattice but not in NA";
  } else {
    res.state = TriState::Yes;
    res.certificate = "all Hilbert-basis candidates in the unit zonotope lie in NA";
  }
  return res;
}

inline GkzMatrix validate_with_saturation(const IntMatrix& m, const Int& bound = 1) {
  GkzMatrix g = validate(m);
  auto s = is_saturated(g, bound);
  g.saturated = s.state;
  g.hole_witness = s.witness;
  return g;
}

}  // namespace gkz
