#pragma once

#include <functional>
#include <map>
#include <set>

#include "lattice.hpp"
#include "polyhedral.hpp"

namespace gkz {

// Binomial commutative algebra in the commutative polynomial ring on the
// ∂-variables: toric ideal generators via lattice-ideal saturation, weight
// initial ideals, standard pairs and irreducible decomposition.

// x^plus - x^minus with disjoint supports; plus - minus lies in ker A for
// members of a toric ideal.
struct Binomial {
  IntVec plus, minus;
  bool degenerate = false;  // the zero binomial

  bool operator==(const Binomial& o) const { return plus == o.plus && minus == o.minus; }
  bool operator<(const Binomial& o) const {
    return std::tie(plus, minus) < std::tie(o.plus, o.minus);
  }
  IntVec difference() const {
    IntVec d(plus.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = plus[i] - minus[i];
    return d;
  }
};

inline Binomial box_from_kernel(const IntVec& u) {
  Binomial b;
  b.plus.assign(u.size(), 0);
  b.minus.assign(u.size(), 0);
  bool zero = true;
  for (size_t i = 0; i < u.size(); ++i) {
    if (u[i] > 0) b.plus[i] = u[i];
    if (u[i] < 0) b.minus[i] = -u[i];
    if (u[i] != 0) zero = false;
  }
  b.degenerate = zero;
  return b;
}

struct MonomialIdeal {
  std::vector<IntVec> generators;  // minimal, sorted

  void minimalize() {
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    std::vector<IntVec> keep;
    for (auto& g : generators) {
      bool redundant = false;
      for (auto& h : generators) {
        if (&h == &g || h == g) continue;
        bool div = true;
        for (size_t j = 0; j < g.size() && div; ++j) div = h[j] <= g[j];
        if (div) { redundant = true; break; }
      }
      if (!redundant) keep.push_back(g);
    }
    generators = std::move(keep);
  }
  bool contains(const IntVec& m) const {
    for (auto& g : generators) {
      bool div = true;
      for (size_t j = 0; j < m.size() && div; ++j) div = g[j] <= m[j];
      if (div) return true;
    }
    return false;
  }
  bool operator==(const MonomialIdeal& o) const { return generators == o.generators; }
};

struct StandardPair {
  IntVec base;
  ColSet face;
  bool operator==(const StandardPair& o) const { return base == o.base && face == o.face; }
  bool operator<(const StandardPair& o) const {
    return std::tie(face, base) < std::tie(o.face, o.base);
  }
};

// ---- polynomial engine --------------------------------------------------------

struct Term {
  IntVec e;
  Rat c;
};

// weight-first order, graded reverse lexicographic tie-break with a variable
// precedence permutation (perm[0] is the biggest variable)
struct TermOrder {
  RatVec weight;              // empty = no weight component
  std::vector<size_t> perm;   // identity when empty
  bool graded = true;

  int cmp(const IntVec& a, const IntVec& b) const {
    if (!weight.empty()) {
      Rat wa = 0, wb = 0;
      for (size_t j = 0; j < a.size(); ++j) {
        wa += weight[j] * Rat(a[j]);
        wb += weight[j] * Rat(b[j]);
      }
      if (wa != wb) return wa < wb ? -1 : 1;
    }
    if (graded) {
      Int da = 0, db = 0;
      for (auto& x : a) da += x;
      for (auto& x : b) db += x;
      if (da != db) return da < db ? -1 : 1;
    }
    // reverse lexicographic: smaller exponent in the cheapest variable wins
    size_t n = a.size();
    for (size_t k = n; k-- > 0;) {
      size_t j = perm.empty() ? k : perm[k];
      if (a[j] != b[j]) return a[j] < b[j] ? 1 : -1;
    }
    return 0;
  }
  bool is_global(size_t n) const {
    IntVec zero(n, 0);
    for (size_t j = 0; j < n; ++j) {
      IntVec e(n, 0);
      e[j] = 1;
      if (cmp(e, zero) <= 0) return false;
    }
    return true;
  }
};

struct Poly {
  std::vector<Term> t;  // sorted descending in the ambient order, no zeros

  bool zero() const { return t.empty(); }
  const Term& lead() const { return t.front(); }
};

namespace tordetail {

inline Poly make_sorted(std::vector<Term> terms, const TermOrder& ord) {
  std::map<IntVec, Rat> acc;
  for (auto& tm : terms) acc[tm.e] += tm.c;
  Poly p;
  for (auto& [e, c] : acc)
    if (c != 0) p.t.push_back({e, c});
  std::sort(p.t.begin(), p.t.end(),
            [&](const Term& x, const Term& y) { return ord.cmp(x.e, y.e) > 0; });
  return p;
}

inline bool divides(const IntVec& a, const IntVec& b) {
  for (size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j]) return false;
  return true;
}

inline IntVec esub(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (size_t j = 0; j < a.size(); ++j) r[j] = a[j] - b[j];
  return r;
}

inline IntVec elcm(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (size_t j = 0; j < a.size(); ++j) r[j] = std::max(a[j], b[j]);
  return r;
}

// p - mono * q, merged in order
inline Poly axpy(const Poly& p, const IntVec& me, const Rat& mc, const Poly& q,
                 const TermOrder& ord) {
  std::vector<Term> terms = p.t;
  for (auto& tm : q.t) {
    IntVec e = tm.e;
    for (size_t j = 0; j < e.size(); ++j) e[j] += me[j];
    terms.push_back({e, -mc * tm.c});
  }
  return make_sorted(std::move(terms), ord);
}

inline Poly reduce(Poly p, const std::vector<Poly>& basis, const TermOrder& ord) {
  std::vector<Term> remainder;
  while (!p.zero()) {
    bool hit = false;
    for (auto& g : basis) {
      if (g.zero()) continue;
      if (divides(g.lead().e, p.lead().e)) {
        p = axpy(p, esub(p.lead().e, g.lead().e), p.lead().c / g.lead().c, g, ord);
        hit = true;
        break;
      }
    }
    if (!hit) {
      remainder.push_back(p.lead());
      p.t.erase(p.t.begin());
    }
  }
  p.t = std::move(remainder);
  return p;
}

}  // namespace tordetail

// reduced Groebner basis; requires a global order
inline std::vector<Poly> buchberger(std::vector<Poly> gens, const TermOrder& ord) {
  using namespace tordetail;
  size_t n = 0;
  for (auto& g : gens)
    if (!g.zero()) n = g.lead().e.size();
  if (n && !ord.is_global(n))
    throw GkzError("NonGlobalOrder", "term order is not global; reductions may not terminate");
  std::vector<Poly> basis;
  for (auto& g : gens) {
    Poly p = make_sorted(g.t, ord);
    if (!p.zero()) basis.push_back(std::move(p));
  }
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) pairs.push_back({i, j});
  while (!pairs.empty()) {
    auto [i, j] = pairs.back();
    pairs.pop_back();
    const IntVec &ei = basis[i].lead().e, &ej = basis[j].lead().e;
    IntVec l = elcm(ei, ej);
    // product criterion
    bool coprime = true;
    for (size_t k = 0; k < l.size() && coprime; ++k) coprime = !(ei[k] > 0 && ej[k] > 0);
    if (coprime) continue;
    Poly s = axpy(Poly{}, esub(l, ei), Rat(-1) / basis[i].lead().c, basis[i], ord);
    s = axpy(s, esub(l, ej), Rat(1) / basis[j].lead().c, basis[j], ord);
    s = reduce(std::move(s), basis, ord);
    if (!s.zero()) {
      for (size_t k = 0; k < basis.size(); ++k) pairs.push_back({k, basis.size()});
      basis.push_back(std::move(s));
    }
  }
  // minimalize + tail-reduce + monic
  std::vector<Poly> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      if (divides(basis[j].lead().e, basis[i].lead().e) &&
          !(j > i && basis[j].lead().e == basis[i].lead().e))
        redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    minimal[i] = reduce(minimal[i], others, ord);
    Rat lc = minimal[i].lead().c;
    for (auto& tm : minimal[i].t) tm.c /= lc;
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](const Poly& a, const Poly& b) { return ord.cmp(a.lead().e, b.lead().e) < 0; });
  return minimal;
}

namespace tordetail {

inline Poly binomial_poly(const Binomial& b, const TermOrder& ord) {
  return make_sorted({{b.plus, Rat(1)}, {b.minus, Rat(-1)}}, ord);
}

// a reduced GB of a toric ideal is binomial; convert back, leading term first
inline Binomial poly_binomial(const Poly& p) {
  if (p.t.size() != 2 || p.t[0].c != 1 || p.t[1].c != -1)
    throw GkzError("InternalError", "non-binomial element in a toric basis");
  Binomial b;
  b.plus = p.t[0].e;
  b.minus = p.t[1].e;
  return b;
}

inline TermOrder grevlex_var_last(size_t n, size_t last) {
  TermOrder ord;
  for (size_t j = 0; j < n; ++j)
    if (j != last) ord.perm.push_back(j);
  ord.perm.push_back(last);
  return ord;
}

}  // namespace tordetail

// generating set of I_A: saturate the kernel lattice ideal one variable at a
// time (reverse-lex with the variable cheapest, then divide it out), then
// reduce in the fixed global grevlex order
inline std::vector<Binomial> toric_ideal_generators(const GkzMatrix& g) {
  using namespace tordetail;
  if (!g.full) throw GkzError("NotFull", "matrix must have full rank");
  size_t n = g.n();
  auto kb = kernel_basis(g.matrix);
  std::vector<Binomial> gens;
  for (auto& u : kb) gens.push_back(box_from_kernel(u));
  if (gens.empty()) return {};
  for (size_t i = 0; i < n; ++i) {
    TermOrder ord = grevlex_var_last(n, i);
    std::vector<Poly> ps;
    for (auto& b : gens) ps.push_back(binomial_poly(b, ord));
    auto gb = buchberger(std::move(ps), ord);
    gens.clear();
    for (auto& p : gb) {
      Binomial b = poly_binomial(p);
      Int m = std::min(b.plus[i], b.minus[i]);
      b.plus[i] -= m;
      b.minus[i] -= m;
      gens.push_back(std::move(b));
    }
  }
  TermOrder ord;  // global grevlex
  std::vector<Poly> ps;
  for (auto& b : gens) ps.push_back(binomial_poly(b, ord));
  auto gb = buchberger(std::move(ps), ord);
  std::vector<Binomial> out;
  for (auto& p : gb) {
    Binomial b = poly_binomial(p);
    // invariant: exponent difference is a kernel element
    for (auto& e : g.matrix.apply(b.difference()))
      if (e != 0) throw GkzError("InternalError", "basis element outside ker A");
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct InitialIdeal {
  bool monomial = true;
  MonomialIdeal ideal;           // when monomial
  std::vector<Binomial> forms;   // the L-graded initial forms otherwise
};

// initial forms of a Groebner basis of I_A for weight L (highest L-weight
// part), tie-break grevlex; I_A is positively graded, so L may be shifted by
// the grading to a positive weight without changing initial forms
inline InitialIdeal initial_ideal(const GkzMatrix& g, const RatVec& L) {
  using namespace tordetail;
  size_t n = g.n();
  RatVec shifted = L;
  RatVec grading(n);
  for (size_t j = 0; j < n; ++j) grading[j] = Rat(dot(g.positive_functional, g.column(j)));
  Rat M = 0;
  for (size_t j = 0; j < n; ++j) {
    Rat need = (Rat(1) - L[j]) / grading[j];
    if (need > M) M = need;
  }
  for (size_t j = 0; j < n; ++j) shifted[j] += M * grading[j];
  TermOrder ord;
  ord.weight = shifted;
  std::vector<Poly> ps;
  for (auto& b : toric_ideal_generators(g)) ps.push_back(binomial_poly(b, ord));
  auto gb = buchberger(std::move(ps), ord);
  InitialIdeal out;
  auto lw = [&](const IntVec& e) {
    Rat w = 0;
    for (size_t j = 0; j < n; ++j) w += L[j] * Rat(e[j]);
    return w;
  };
  for (auto& p : gb) {
    Binomial b = poly_binomial(p);
    if (lw(b.plus) == lw(b.minus)) {
      out.monomial = false;
      out.forms.push_back(std::move(b));
    } else {
      out.ideal.generators.push_back(b.plus);
      Binomial m;
      m.plus = b.plus;
      m.minus = IntVec(n, 0);
      out.forms.push_back(std::move(m));
    }
  }
  if (!out.monomial) {
    // keep all graded initial forms; monomial ones stay as plus-only binomials
    out.ideal = MonomialIdeal{};
  } else {
    out.forms.clear();
    out.ideal.minimalize();
  }
  return out;
}

// all (b, σ): supp(b) ∩ σ = ∅, the translated orthant b + ℕ^σ misses m, and
// the pair is maximal among such
inline std::vector<StandardPair> standard_pairs(const MonomialIdeal& m, size_t nvars) {
  std::vector<Int> box(nvars, 0);
  for (auto& g : m.generators)
    for (size_t j = 0; j < nvars; ++j) box[j] = std::max(box[j], g[j]);
  auto admissible = [&](const IntVec& b, const ColSet& sigma) {
    for (auto& g : m.generators) {
      bool div = true;
      for (size_t j = 0; j < nvars && div; ++j)
        if (!std::binary_search(sigma.begin(), sigma.end(), j)) div = g[j] <= b[j];
      if (div) return false;
    }
    return true;
  };
  std::vector<StandardPair> cand;
  IntVec b(nvars, 0);
  std::function<void(size_t)> rec = [&](size_t j) {
    if (j == nvars) {
      ColSet free;
      for (size_t k = 0; k < nvars; ++k)
        if (b[k] == 0) free.push_back(k);
      for (uint64_t mask = 0; mask < (1ULL << free.size()); ++mask) {
        ColSet sigma;
        for (size_t k = 0; k < free.size(); ++k)
          if (mask & (1ULL << k)) sigma.push_back(free[k]);
        if (admissible(b, sigma)) cand.push_back({b, sigma});
      }
      return;
    }
    for (Int v = 0; v <= box[j]; ++v) {
      b[j] = v;
      rec(j + 1);
    }
    b[j] = 0;
  };
  rec(0);
  auto contained = [&](const StandardPair& p, const StandardPair& q) {
    // b_p + N^σp ⊆ b_q + N^σq
    if (!std::includes(q.face.begin(), q.face.end(), p.face.begin(), p.face.end()))
      return false;
    for (size_t j = 0; j < nvars; ++j) {
      bool inq = std::binary_search(q.face.begin(), q.face.end(), j);
      if (inq) {
        if (p.base[j] < q.base[j]) return false;
      } else if (p.base[j] != q.base[j]) {
        return false;
      }
    }
    return true;
  };
  std::vector<StandardPair> out;
  for (auto& p : cand) {
    bool maximal = true;
    for (auto& q : cand) {
      if (p == q) continue;
      if (contained(p, q)) { maximal = false; break; }
    }
    if (maximal) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// one irreducible component ({∂_j^{b_j+1} : j ∉ σ}) per standard pair
inline std::vector<MonomialIdeal> irreducible_decomposition(const MonomialIdeal& m,
                                                            size_t nvars) {
  std::vector<MonomialIdeal> out;
  for (auto& sp : standard_pairs(m, nvars)) {
    if (sp.face.size() == nvars) return {};  // zero ideal: empty intersection
    MonomialIdeal comp;
    for (size_t j = 0; j < nvars; ++j) {
      if (std::binary_search(sp.face.begin(), sp.face.end(), j)) continue;
      IntVec g(nvars, 0);
      g[j] = sp.base[j] + 1;
      comp.generators.push_back(std::move(g));
    }
    comp.minimalize();
    if (std::find(out.begin(), out.end(), comp) == out.end()) out.push_back(std::move(comp));
  }
  return out;
}

// Stanley–Reisner complex of the radical of gr^L(I_A) for generic L
inline SimplicialComplex initial_complex(const GkzMatrix& g, const RatVec& L) {
  auto ini = initial_ideal(g, L);
  if (!ini.monomial)
    throw GkzError("NonGenericWeight", "initial ideal is not monomial");
  size_t n = g.n();
  std::vector<ColSet> supports;
  for (auto& m : ini.ideal.generators) {
    ColSet s;
    for (size_t j = 0; j < n; ++j)
      if (m[j] > 0) s.push_back(j);
    supports.push_back(std::move(s));
  }
  std::vector<ColSet> faces;
  for (uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    ColSet tau;
    for (size_t j = 0; j < n; ++j)
      if (mask & (1ULL << j)) tau.push_back(j);
    bool ok = true;
    for (auto& s : supports)
      if (std::includes(tau.begin(), tau.end(), s.begin(), s.end())) { ok = false; break; }
    if (ok) faces.push_back(std::move(tau));
  }
  SimplicialComplex sc;
  for (auto& f : faces) {
    bool maximal = true;
    for (auto& h : faces)
      if (h.size() > f.size() && std::includes(h.begin(), h.end(), f.begin(), f.end())) {
        maximal = false;
        break;
      }
    if (maximal) sc.facets.push_back(f);
  }
  std::sort(sc.facets.begin(), sc.facets.end());
  return sc;
}

}  // namespace gkz
