#pragma once

#include <optional>
#include <sstream>

#include "fuchs.hpp"
#include "toric.hpp"

namespace gkz {

// The A-hypergeometric layer: systems H_A(beta), the univariate dictionary,
// resonance, rank, Gamma-series, slopes, interlacing, Beukers' sigma.

struct GkzSystem {
  GkzMatrix matrix;
  RatVec beta;
  std::vector<Binomial> boxes;

  const IntMatrix& euler_rows() const { return matrix.matrix; }

  std::string render() const {
    std::ostringstream os;
    for (size_t i = 0; i < matrix.d(); ++i) {
      bool first = true;
      for (size_t j = 0; j < matrix.n(); ++j) {
        Int a = matrix.matrix(i, j);
        if (a == 0) continue;
        if (!first) os << " + ";
        if (a != 1) os << to_string(a) << "*";
        os << "t" << j + 1;
        first = false;
      }
      os << " - (" << to_string(beta[i]) << ")\n";
    }
    auto mono = [&os, this](const IntVec& e) {
      bool any = false;
      for (size_t j = 0; j < matrix.n(); ++j) {
        if (e[j] == 0) continue;
        os << "d" << j + 1;
        if (e[j] > 1) os << "^" << to_string(e[j]);
        any = true;
      }
      if (!any) os << "1";
    };
    for (auto& b : boxes) {
      mono(b.plus);
      os << " - ";
      mono(b.minus);
      os << "\n";
    }
    return os.str();
  }
};

inline GkzSystem assemble(const GkzMatrix& g, const RatVec& beta) {
  if (beta.size() != g.d())
    throw GkzError("DimensionMismatch", "beta must have one entry per row of A");
  return {g, beta, toric_ideal_generators(g)};
}

// ---- univariate dictionary ----------------------------------------------------

struct UnivariateOp {
  IntVec v;   // general form, ker A = Zv
  RatVec c;   // beta = A.c
  bool has_pfq = false;
  RatVec alpha, beta_params;

  // coefficient lists of the theta-products on the two sides of
  // prod_{v_j>0} prod_l (v_j th + c_j - l)  =  z prod_{v_j<0} prod_l (v_j th + c_j - l)
  std::pair<RatVec, RatVec> theta_polynomial() const {
    auto mul = [](RatVec p, const Rat& lin_t, const Rat& lin_c) {
      RatVec q(p.size() + 1, Rat(0));
      for (size_t i = 0; i < p.size(); ++i) {
        q[i] += p[i] * lin_c;
        q[i + 1] += p[i] * lin_t;
      }
      return q;
    };
    RatVec left{Rat(1)}, right{Rat(1)};
    for (size_t j = 0; j < v.size(); ++j) {
      for (Int l = 0; l < iabs(v[j]); ++l) {
        if (v[j] > 0)
          left = mul(left, Rat(v[j]), c[j] - Rat(l));
        else if (v[j] < 0)
          right = mul(right, Rat(v[j]), c[j] - Rat(l));
      }
    }
    return {left, right};
  }

  // z-term expansion of P = left(theta) - z * right(theta)
  std::vector<ZTerm> zterms() const {
    auto [l, r] = theta_polynomial();
    auto out = theta_poly_zterms(l, 0);
    for (auto& t : theta_poly_zterms(r, 1)) out.push_back({-t.c, t.r, t.s});
    return out;
  }
};

struct UnivToGkzResult {
  GkzMatrix g;
  RatVec beta;
  bool pointed = true;
};

inline UnivToGkzResult univariate_to_gkz(const UnivariateOp& op) {
  IntVec v = op.v;
  if (v != primitive(v)) throw GkzError("NonPrimitiveKernel", "v must be primitive");
  size_t n = v.size();
  IntMatrix vm(1, n);
  for (size_t j = 0; j < n; ++j) vm(0, j) = v[j];
  auto rows = kernel_basis(vm);  // HNF basis of the orthogonal lattice
  IntMatrix A(rows.size(), n);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < n; ++j) A(i, j) = rows[i][j];
  UnivToGkzResult out;
  try {
    out.g = validate(A);
  } catch (const GkzError& e) {
    if (e.kind != "NotPointed") throw;
    out.pointed = false;
    out.g.matrix = A;
    out.g.full = true;
    out.g.pointed = false;
  }
  out.beta.assign(rows.size(), Rat(0));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < n; ++j) out.beta[i] += Rat(A(i, j)) * op.c[j];
  return out;
}

inline UnivariateOp gkz_to_univariate(const GkzMatrix& g, const RatVec& beta) {
  if (g.n() != g.d() + 1)
    throw GkzError("CorankNotOne", "matrix must have corank one");
  auto kb = kernel_basis(g.matrix);
  if (kb.size() != 1) throw GkzError("CorankNotOne", "kernel rank is not one");
  IntVec v = kb[0];
  Int sum = 0;
  for (auto& x : v) sum += x;
  bool flip = sum < 0;
  if (sum == 0)
    for (auto& x : v)
      if (x != 0) { flip = x < 0; break; }
  if (flip)
    for (auto& x : v) x = -x;
  auto c = solve_rational(g.matrix, beta);
  if (!c) throw GkzError("InternalError", "A.c = beta has no rational solution");
  UnivariateOp op;
  op.v = v;
  op.c = *c;
  bool pm_one = true;
  for (auto& x : v) pm_one = pm_one && iabs(x) == 1;
  if (pm_one) {
    // gauge c along the kernel so the first positive coordinate carries the
    // bare theta factor, then read off the pFq parameters
    size_t j0 = v.size();
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] > 0) { j0 = j; break; }
    if (j0 < v.size()) {
      RatVec cn = op.c;
      Rat t = cn[j0];
      for (size_t j = 0; j < v.size(); ++j) cn[j] -= t * Rat(v[j]);
      op.has_pfq = true;
      for (size_t j = 0; j < v.size(); ++j) {
        if (v[j] < 0) op.alpha.push_back(-cn[j]);
        if (v[j] > 0 && j != j0) op.beta_params.push_back(cn[j] + 1);
      }
      for (auto& bp : op.beta_params)
        if (is_integer(bp) && bp <= 0) op.has_pfq = false;  // series undefined
      if (!op.has_pfq) {
        op.alpha.clear();
        op.beta_params.clear();
      }
    }
  }
  return op;
}

// ---- resonance ----------------------------------------------------------------

struct ResonanceResult {
  bool resonant = false;
  std::optional<ColSet> witness;  // facet columns
  std::optional<RatVec> normal;
};

inline ResonanceResult is_resonant(const GkzMatrix& g, const RatVec& beta) {
  for (auto& f : cone_facets(g)) {
    Rat val = 0;
    for (size_t i = 0; i < g.d(); ++i) val += f.supporting_normal[i] * beta[i];
    if (is_integer(val)) return {true, f.columns, f.supporting_normal};
  }
  return {};
}

struct SResResult {
  TriState state = TriState::Unknown;
  std::optional<std::pair<size_t, Int>> witness;  // (column j, shift k)
  std::string certificate;
};

// semi-decision for strong resonance: search translated quasi-degree planes of
// S_A/(t^{a_j}) detected from bounded enumeration; certify No via saturation
inline SResResult is_strongly_resonant(const GkzMatrix& g, const RatVec& beta,
                                       Int bound = 8) {
  size_t d = g.d(), n = g.n();
  // true degrees of NA up to the bound, as multiset of points
  std::set<IntVec> na;
  IntVec cur(d, 0);
  std::function<void(size_t, Int)> gen = [&](size_t j, Int left) {
    na.insert(cur);
    if (j == n) return;
    for (Int t = 1; t <= left; ++t) {
      for (size_t i = 0; i < d; ++i) cur[i] += t * g.matrix(i, j);
      gen(j + 1, left - t);
      for (size_t i = 0; i < d; ++i) cur[i] -= t * g.matrix(i, j);
    }
    gen(j + 1, left);
  };
  gen(0, bound);
  auto faces = face_lattice(g).faces;
  for (size_t j = 0; j < n; ++j) {
    IntVec aj = g.column(j);
    std::set<IntVec> tj;  // NA \ (a_j + NA), within the enumerated window
    for (auto& x : na) {
      IntVec y(d);
      for (size_t i = 0; i < d; ++i) y[i] = x[i] - aj[i];
      if (!semigroup_member(g, y)) tj.insert(x);
    }
    for (auto& f : faces) {
      // columns of the face span the candidate plane direction
      std::vector<IntVec> dir;
      for (auto col : f.columns) dir.push_back(g.column(col));
      for (auto& c : tj) {
        // bounded orbit of c along the face must stay in the true-degree set
        bool orbit_ok = true;
        std::vector<IntVec> orbit{c};
        for (auto& dv : dir) {
          std::vector<IntVec> next = orbit;
          for (auto& p : orbit)
            for (Int t = 1; t <= 3; ++t) {
              IntVec q = p;
              for (size_t i = 0; i < d; ++i) q[i] += t * dv[i];
              next.push_back(q);
            }
          orbit = std::move(next);
        }
        for (auto& p : orbit) {
          // exact membership: p in NA but reachable from a_j means the
          // candidate plane leaves the true-degree set
          if (!semigroup_member(g, p)) continue;
          IntVec q(d);
          for (size_t i = 0; i < d; ++i) q[i] = p[i] - aj[i];
          if (semigroup_member(g, q)) { orbit_ok = false; break; }
        }
        if (!orbit_ok) continue;
        // beta + (k+1) a_j in c + span(face)?
        for (Int k = 0; k <= bound; ++k) {
          RatVec q(d);
          for (size_t i = 0; i < d; ++i) q[i] = beta[i] + Rat((k + 1) * aj[i]) - Rat(c[i]);
          // q in Q-span of dir
          IntVec qi;
          Int scale = 1;
          for (auto& x : q) scale = scale / igcd(scale, den(x)) * den(x);
          for (auto& x : q) qi.push_back(num(x) * (scale / den(x)));
          auto with = dir;
          with.push_back(qi);
          if (rank_of(with) == rank_of(dir)) {
            SResResult r;
            r.state = TriState::Yes;
            r.witness = {j, k};
            r.certificate = "plane through " + vec_string(c);
            return r;
          }
        }
      }
    }
  }
  bool integral = true;
  for (auto& b : beta) integral = integral && is_integer(b);
  if (integral && is_saturated(g).state == TriState::Yes) {
    IntVec bi(d);
    for (size_t i = 0; i < d; ++i) bi[i] = num(beta[i]);
    if (semigroup_member(g, bi)) {
      SResResult r;
      r.state = TriState::No;
      r.certificate = "saturated semigroup contains beta";
      return r;
    }
  }
  return {};
}

// ---- rank ----------------------------------------------------------------------

inline Int generic_rank(const GkzMatrix& g) { return simplicial_volume(g); }

inline Int monomial_curve_rank(const GkzMatrix& g, const IntVec& beta) {
  if (g.d() != 2 || !g.homogeneous() || !g.full || !g.pointed)
    throw GkzError("PreconditionViolation", "monomial-curve rank needs a homogeneous 2-row matrix");
  Int vol = simplicial_volume(g);
  bool hole = cone_member(g.matrix, beta) && !semigroup_member(g, beta);
  return hole ? vol + 1 : vol;
}

// ---- Gamma series ----------------------------------------------------------------

struct GammaSeries {
  RatVec exponent;               // gamma with A.gamma = beta
  std::map<IntVec, Rat> terms;   // kernel offsets u -> coefficient (base u=0 is 1)
  Rat truncation_weight;
  RatVec weight_used;
  IntVec base;                   // standard pair data (b, sigma)
  ColSet cell;
};

namespace gsdetail {

// Gamma(x+1)/Gamma(x+u+1) as an exact rational; 0 encodes a reciprocal pole
inline std::optional<Rat> gamma_ratio(const Rat& x, const Int& u) {
  Rat r = 1;
  if (u >= 0) {
    for (Int t = 1; t <= u; ++t) {
      Rat f = x + Rat(t);
      if (f == 0) return std::nullopt;  // base term itself at a pole
      r /= f;
    }
  } else {
    for (Int t = 0; t < -u; ++t) r *= x - Rat(t);
  }
  return r;
}

}  // namespace gsdetail

inline std::vector<GammaSeries> gamma_series(const GkzMatrix& g, const RatVec& beta,
                                             const RatVec& L, const Rat& truncation) {
  size_t d = g.d(), n = g.n();
  if (!g.homogeneous())
    throw GkzError("PreconditionViolation", "Gamma series need a homogeneous matrix");
  auto tri = regular_triangulation(g, L);  // throws NonGenericWeight
  auto ini = initial_ideal(g, L);
  if (!ini.monomial) throw GkzError("NonGenericWeight", "initial ideal is not monomial");
  auto pairs = standard_pairs(ini.ideal, n);
  auto boxes = toric_ideal_generators(g);
  Rat spread = 0;
  auto lwt = [&](const IntVec& e) {
    Rat w = 0;
    for (size_t j = 0; j < n; ++j) w += L[j] * Rat(e[j]);
    return w;
  };
  for (auto& b : boxes) spread = std::max({spread, lwt(b.plus), lwt(b.minus)});
  Rat internal = truncation + spread;

  std::vector<GammaSeries> out;
  for (auto& cell : tri.maximal_cells) {
    // exponents of this cell, one per top-dimensional standard pair on it
    std::vector<std::pair<IntVec, RatVec>> exps;
    IntMatrix As(d, d);
    for (size_t i = 0; i < d; ++i)
      for (size_t k = 0; k < d; ++k) As(i, k) = g.matrix(i, cell[k]);
    for (auto& sp : pairs) {
      if (sp.face != cell) continue;
      RatVec rhs(d);
      for (size_t i = 0; i < d; ++i) {
        rhs[i] = beta[i];
        for (size_t j = 0; j < n; ++j) rhs[i] -= Rat(sp.base[j] * g.matrix(i, j));
      }
      auto gs = solve_rational(As, rhs);
      if (!gs) throw GkzError("InternalError", "cell submatrix not invertible");
      RatVec gamma(n, Rat(0));
      for (size_t j = 0; j < n; ++j) gamma[j] = Rat(sp.base[j]);
      for (size_t k = 0; k < d; ++k) gamma[cell[k]] = (*gs)[k];
      exps.push_back({sp.base, gamma});
    }
    for (size_t a = 0; a < exps.size(); ++a)
      for (size_t b2 = a + 1; b2 < exps.size(); ++b2) {
        bool integral = true;
        RatVec diff(n);
        for (size_t j = 0; j < n; ++j) {
          diff[j] = exps[a].second[j] - exps[b2].second[j];
          integral = integral && is_integer(diff[j]);
        }
        if (integral)
          throw GkzError("ResonantParameter", "integral exponent difference " + vec_string(diff));
      }
    // weight of kernel elements as a positive form on the off-cell coordinates
    IntMatrix Ast = As.transposed();
    RatVec Ls(d);
    for (size_t k = 0; k < d; ++k) Ls[k] = L[cell[k]];
    auto psi = solve_rational(Ast, Ls);
    if (!psi) throw GkzError("InternalError", "cell form unsolvable");
    std::vector<size_t> off;
    for (size_t j = 0; j < n; ++j)
      if (!std::binary_search(cell.begin(), cell.end(), j)) off.push_back(j);
    RatVec cw(off.size());
    for (size_t t = 0; t < off.size(); ++t) {
      cw[t] = L[off[t]];
      for (size_t i = 0; i < d; ++i) cw[t] -= (*psi)[i] * Rat(g.matrix(i, off[t]));
      if (cw[t] <= 0) throw GkzError("InternalError", "non-positive cell weight");
    }

    for (auto& [b, gamma] : exps) {
      GammaSeries s;
      s.exponent = gamma;
      s.truncation_weight = truncation;
      s.weight_used = L;
      s.base = b;
      s.cell = cell;
      // budget for shifted coordinates m_t = u_{off_t} + b_{off_t} >= 0
      Rat budget = internal;
      for (size_t t = 0; t < off.size(); ++t) budget += cw[t] * Rat(b[off[t]]);
      IntVec m(off.size(), 0);
      std::function<void(size_t, Rat)> rec = [&](size_t t, Rat left) {
        if (t == off.size()) {
          // lift to a kernel element if the cell part is integral
          RatVec rhs(d, Rat(0));
          IntVec u(n, 0);
          for (size_t q = 0; q < off.size(); ++q) u[off[q]] = m[q] - b[off[q]];
          for (size_t i = 0; i < d; ++i)
            for (size_t q = 0; q < off.size(); ++q)
              rhs[i] -= Rat(g.matrix(i, off[q]) * u[off[q]]);
          auto us = solve_rational(As, rhs);
          if (!us) return;
          for (size_t k = 0; k < d; ++k) {
            if (!is_integer((*us)[k])) return;
            u[cell[k]] = num((*us)[k]);
          }
          Rat coeff = 1;
          for (size_t j = 0; j < n; ++j) {
            auto f = gsdetail::gamma_ratio(gamma[j], u[j]);
            if (!f)
              throw GkzError("ResonantParameter",
                             "exponent pole at coordinate " + std::to_string(j + 1));
            coeff *= *f;
          }
          if (coeff != 0) s.terms[u] = coeff;
          return;
        }
        for (Int v = 0; Rat(v) * cw[t] <= left; ++v) {
          m[t] = v;
          rec(t + 1, left - Rat(v) * cw[t]);
        }
        m[t] = 0;
      };
      rec(0, budget);
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), [](const GammaSeries& a, const GammaSeries& b) {
    return std::tie(a.cell, a.base) < std::tie(b.cell, b.base);
  });
  return out;
}

struct Residual {
  std::map<IntVec, Rat> terms;  // offsets w (relative to gamma) -> coefficient
  std::vector<Rat> weights;
};

inline Residual apply_system(const GkzSystem& sys, const GammaSeries& s) {
  size_t d = sys.matrix.d(), n = sys.matrix.n();
  std::map<IntVec, Rat> acc;
  // Euler operators: theta_j scales x^{gamma+u} by gamma_j + u_j
  for (size_t i = 0; i < d; ++i)
    for (auto& [u, c] : s.terms) {
      Rat f = -sys.beta[i];
      for (size_t j = 0; j < n; ++j)
        f += Rat(sys.matrix.matrix(i, j)) * (s.exponent[j] + Rat(u[j]));
      if (f != 0) acc[u] += c * f;
    }
  auto fall = [&](const IntVec& u, const IntVec& e) {
    Rat r = 1;
    for (size_t j = 0; j < n; ++j)
      for (Int t = 0; t < e[j]; ++t) r *= s.exponent[j] + Rat(u[j]) - Rat(t);
    return r;
  };
  for (auto& b : sys.boxes)
    for (auto& [u, c] : s.terms) {
      IntVec wp(n), wm(n);
      for (size_t j = 0; j < n; ++j) {
        wp[j] = u[j] - b.plus[j];
        wm[j] = u[j] - b.minus[j];
      }
      acc[wp] += c * fall(u, b.plus);
      acc[wm] -= c * fall(u, b.minus);
    }
  Residual r;
  for (auto& [w, c] : acc) {
    if (c == 0) continue;
    Rat wt = 0;
    for (size_t j = 0; j < n; ++j) wt += s.weight_used[j] * Rat(w[j]);
    r.terms[w] = c;
    r.weights.push_back(wt);
  }
  return r;
}

// ---- slopes --------------------------------------------------------------------

inline std::vector<Rat> slopes_along_hyperplane(const GkzMatrix& g, size_t j,
                                                const Rat& lo, const Rat& hi) {
  if (g.homogeneous()) return {};
  RatVec base(g.n(), Rat(1)), dir(g.n(), Rat(0));
  base[j] = 0;
  dir[j] = 1;
  return umbrella_jumps(g, base, dir, lo, hi);
}

// ---- interlacing & algebraicity --------------------------------------------------

// beta_params is expected with the trailing 1 already appended
inline bool interlacing_test(const RatVec& alpha, const RatVec& beta_params) {
  if (alpha.size() != beta_params.size())
    throw GkzError("DimensionMismatch", "parameter lists must interlace pairwise");
  std::vector<std::pair<Rat, int>> pts;
  for (auto& a : alpha) pts.push_back({frac(a), 0});
  for (auto& b : beta_params) pts.push_back({frac(b), 1});
  for (auto& [fa, la] : pts)
    for (auto& [fb, lb] : pts)
      if (la == 0 && lb == 1 && fa == fb)
        throw GkzError("ListsIntersect", "parameters coincide modulo 1");
  std::stable_sort(pts.begin(), pts.end(),
                   [](auto& x, auto& y) { return x.first < y.first; });
  for (size_t i = 0; i < pts.size(); ++i)
    if (pts[i].second == pts[(i + 1) % pts.size()].second) return false;
  return true;
}

struct SigmaResult {
  Int count = 0;
  bool complete = false;
  std::vector<RatVec> generators;
};

// number of NA-module generators of (beta + Z^d) cap cone(A)
inline SigmaResult beukers_sigma(const GkzMatrix& g, const RatVec& beta, Int bound = 0) {
  if (!g.full || !g.pointed || !g.homogeneous() ||
      is_saturated(g).state != TriState::Yes)
    throw GkzError("PreconditionViolation",
                   "sigma needs a full pointed homogeneous saturated matrix");
  size_t d = g.d(), n = g.n();
  auto& h = *g.homogeneity_row;  // degree functional, h.a_j = 1
  Rat degsum = 0;
  for (size_t j = 0; j < n; ++j) {
    Rat dj = 0;
    for (size_t i = 0; i < d; ++i) dj += h[i] * Rat(g.matrix(i, j));
    degsum += dj;
  }
  Rat cap = degsum;  // generators live below the sum of column degrees
  bool complete = bound == 0 || Rat(bound) >= cap;
  if (bound != 0 && Rat(bound) < cap) cap = Rat(bound);
  auto facets = cone_facets(g);
  auto in_cone = [&](const RatVec& x) {
    for (auto& f : facets) {
      Rat v = 0;
      for (size_t i = 0; i < d; ++i) v += f.supporting_normal[i] * x[i];
      if (v < 0) return false;
    }
    return true;
  };
  // coordinate box from |x| <= cap * sum_j |a_j| on the truncated cone
  Int M = 0;
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < d; ++i) M += iabs(g.matrix(i, j));
  M = M * (rfloor(cap) + 1);
  std::vector<RatVec> pts;
  RatVec x(d);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == d) {
      Rat degv = 0;
      for (size_t k = 0; k < d; ++k) degv += h[k] * x[k];
      if (degv > cap || !in_cone(x)) return;
      // candidates must differ from beta by an element of ZA
      IntVec diff(d);
      for (size_t k = 0; k < d; ++k) diff[k] = num(x[k] - beta[k]);
      if (!solve_integer(g.matrix, diff)) return;
      pts.push_back(x);
      return;
    }
    for (Int m = -M; m <= M; ++m) {
      x[i] = frac(beta[i]) + Rat(m);
      rec(i + 1);
    }
  };
  rec(0);
  SigmaResult out;
  out.complete = complete;
  for (auto& p : pts) {
    bool generator = true;
    for (size_t j = 0; j < n && generator; ++j) {
      RatVec q(d);
      for (size_t i = 0; i < d; ++i) q[i] = p[i] - Rat(g.matrix(i, j));
      generator = !in_cone(q);
    }
    if (generator) {
      out.generators.push_back(p);
      ++out.count;
    }
  }
  return out;
}

inline bool algebraicity_check(const GkzMatrix& g, const RatVec& beta) {
  Int vol = simplicial_volume(g);
  Int D = 1;
  for (auto& b : beta) D = D / igcd(D, den(b)) * den(b);
  if (D == 1) return beukers_sigma(g, beta).count == vol;
  for (Int k = 1; k <= D; ++k) {
    if (igcd(k, D) != 1) continue;
    RatVec kb(beta.size());
    for (size_t i = 0; i < beta.size(); ++i) kb[i] = Rat(k) * beta[i];
    if (beukers_sigma(g, kb).count != vol) return false;
  }
  return true;
}

}  // namespace gkz
