#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "lattice.hpp"
#include "polytope.hpp"

namespace gkz {

// Column indices are 0-based internally; serialization shifts to the 1-based
// convention of the literature.
using ColSet = std::vector<size_t>;  // sorted

struct Face {
  ColSet columns;
  int dim = -1;            // affine dimension as a face of the umbrella
  RatVec supporting_normal;  // d-vector; zero for the full face
  bool operator<(const Face& o) const {
    if (dim != o.dim) return dim < o.dim;
    return columns < o.columns;
  }
};

struct Umbrella {
  std::vector<Face> faces;  // sorted by (dim, columns)
  RatVec weight;
  std::vector<ColSet> skeleton(int k) const {
    std::vector<ColSet> out;
    for (auto& f : faces)
      if (f.dim == k) out.push_back(f.columns);
    return out;
  }
  std::vector<ColSet> face_sets() const {
    std::vector<ColSet> out;
    for (auto& f : faces) out.push_back(f.columns);
    return out;
  }
  bool contains(const ColSet& cs) const {
    for (auto& f : faces)
      if (f.columns == cs) return true;
    return false;
  }
  bool same_faces(const Umbrella& o) const { return face_sets() == o.face_sets(); }
};

struct Triangulation {
  std::vector<ColSet> maximal_cells;  // sorted
  std::vector<Int> cell_volumes;      // |det| of the column submatrix
  Int total_volume() const {
    Int t = 0;
    for (auto& v : cell_volumes) t += v;
    return t;
  }
};

struct SimplicialComplex {
  std::vector<ColSet> facets;  // sorted, inclusion-maximal
  bool has_face(const ColSet& f) const {
    for (auto& g : facets)
      if (std::includes(g.begin(), g.end(), f.begin(), f.end())) return true;
    return false;
  }
  bool operator==(const SimplicialComplex& o) const { return facets == o.facets; }
};

namespace detail {

// lifted columns (a_j, M*L_j) with M clearing denominators; scaling the last
// coordinate by a positive constant never changes the face structure
inline std::vector<IntVec> lift_columns(const IntMatrix& A, const RatVec& L) {
  Int M = 1;
  for (auto& q : L) M = M / igcd(M, den(q)) * den(q);
  std::vector<IntVec> b(A.cols);
  for (size_t j = 0; j < A.cols; ++j) {
    b[j] = A.col(j);
    b[j].push_back(num(L[j]) * (M / den(L[j])));
  }
  return b;
}

// is tau the exact zero set of some outer normal with negative last
// coordinate?  (the umbrella membership test)
inline std::optional<RatVec> umbrella_normal(const std::vector<IntVec>& b, const ColSet& tau) {
  size_t dim = b.empty() ? 0 : b[0].size();
  std::vector<LinIneq> sys;
  auto in_tau = [&](size_t j) { return std::binary_search(tau.begin(), tau.end(), j); };
  for (size_t j = 0; j < b.size(); ++j) {
    LinIneq iq;
    iq.c.resize(dim);
    for (size_t i = 0; i < dim; ++i) iq.c[i] = Rat(b[j][i]);
    if (in_tau(j)) {
      LinIneq iq2 = iq;
      for (auto& q : iq2.c) q = -q;
      iq.rhs = 0;
      iq2.rhs = 0;
      sys.push_back(iq);
      sys.push_back(std::move(iq2));
    } else {
      for (auto& q : iq.c) q = -q;  //  psi.b_j <= -1
      iq.rhs = 1;
      sys.push_back(std::move(iq));
    }
  }
  LinIneq last;
  last.c.assign(dim, Rat(0));
  last.c[dim - 1] = -1;  // psi_{d+1} <= -1
  last.rhs = 1;
  sys.push_back(std::move(last));
  auto r = fm_feasible(sys, dim);
  if (!r.feasible) return std::nullopt;
  return r.point;
}

inline size_t lifted_rank(const std::vector<IntVec>& b, const ColSet& tau) {
  std::vector<IntVec> sel;
  for (auto j : tau) sel.push_back(b[j]);
  return rank_of(sel);
}

}  // namespace detail

// the (A,L)-umbrella, by the lifted-cone construction: faces of the cone over
// {(a_j, L_j)} whose outer normal has strictly negative last coordinate
inline Umbrella umbrella(const GkzMatrix& g, const RatVec& L) {
  if (!g.pointed) throw GkzError("NotPointed", "umbrella needs a pointed matrix");
  if (L.size() != g.n()) throw GkzError("DimensionMismatch", "weight length != n");
  size_t n = g.n(), d = g.d();
  auto b = detail::lift_columns(g.matrix, L);
  Umbrella umb;
  umb.weight = L;
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    ColSet tau;
    for (size_t j = 0; j < n; ++j)
      if (mask & (size_t(1) << j)) tau.push_back(j);
    auto psi = detail::umbrella_normal(b, tau);
    if (!psi) continue;
    Face f;
    f.columns = tau;
    f.dim = tau.empty() ? -1 : static_cast<int>(detail::lifted_rank(b, tau)) - 1;
    // store the inward d-part of the normal, primitively
    RatVec proj(d);
    for (size_t i = 0; i < d; ++i) proj[i] = -(*psi)[i];
    bool zero = std::all_of(proj.begin(), proj.end(), [](const Rat& q) { return q == 0; });
    if (!zero) {
      IntVec p = primitive(proj);
      for (size_t i = 0; i < d; ++i) proj[i] = Rat(p[i]);
    }
    f.supporting_normal = proj;
    umb.faces.push_back(std::move(f));
  }
  if (umb.faces.empty() || !umb.faces.front().columns.empty())
    throw GkzError("DegenerateWeight", "lifted cone admits no visible empty face");
  std::sort(umb.faces.begin(), umb.faces.end());
  return umb;
}

// face lattice of the cone R>=0 A, as the L = 0 umbrella
inline Umbrella face_lattice(const GkzMatrix& g) {
  return umbrella(g, RatVec(g.n(), Rat(0)));
}

// facets of the cone (codimension-1 faces), used for resonance tests
inline std::vector<Face> cone_facets(const GkzMatrix& g) {
  auto fl = face_lattice(g);
  std::vector<Face> out;
  for (auto& f : fl.faces)
    if (!f.columns.empty() && rank_of([&] {
          std::vector<IntVec> cols;
          for (auto j : f.columns) cols.push_back(g.column(j));
          return cols;
        }()) == g.d() - 1)
      out.push_back(f);
  // d = 1 cones have the empty face as their only facet
  if (g.d() == 1)
    for (auto& f : fl.faces)
      if (f.columns.empty()) out.push_back(f);
  return out;
}

// critical parameters of the umbrella family base + t*direction inside an
// open window: roots of the (d+1)-minor determinants (each linear in t),
// confirmed by comparing umbrellas at and around the candidate
inline std::vector<Rat> umbrella_jumps(const GkzMatrix& g, const RatVec& base,
                                       const RatVec& direction, const Rat& lo, const Rat& hi) {
  if (std::all_of(direction.begin(), direction.end(), [](const Rat& q) { return q == 0; }))
    throw GkzError("ZeroDirection", "umbrella_jumps needs a nonzero direction");
  size_t n = g.n(), d = g.d();
  std::set<Rat> cand;
  if (n >= d + 1) {
    std::vector<size_t> idx(d + 1);
    std::function<void(size_t, size_t)> rec = [&](size_t start, size_t got) {
      if (got == d + 1) {
        // det is affine in t: last row splits as base + t*direction
        auto det_with = [&](const RatVec& lastrow) {
          std::vector<RatVec> m(d + 1, RatVec(d + 1));
          for (size_t c = 0; c < d + 1; ++c) {
            for (size_t i = 0; i < d; ++i) m[i][c] = Rat(g.matrix(i, idx[c]));
            m[d][c] = lastrow[idx[c]];
          }
          return polydetail::det_rat(m);
        };
        Rat c0 = det_with(base);
        RatVec dirfull = direction;
        Rat c1 = det_with(dirfull);
        if (c1 != 0) {
          Rat root = -c0 / c1;
          if (root > lo && root < hi) cand.insert(root);
        }
        return;
      }
      for (size_t j = start; j < n; ++j) {
        idx[got] = j;
        rec(j + 1, got + 1);
      }
    };
    rec(0, 0);
  }
  std::vector<Rat> c(cand.begin(), cand.end());
  if (c.empty()) return {};
  auto weight_at = [&](const Rat& t) {
    RatVec L(n);
    for (size_t j = 0; j < n; ++j) L[j] = base[j] + t * direction[j];
    return L;
  };
  std::vector<Rat> samples;
  samples.push_back((lo + c.front()) / 2);
  for (size_t i = 0; i + 1 < c.size(); ++i) samples.push_back((c[i] + c[i + 1]) / 2);
  samples.push_back((c.back() + hi) / 2);
  std::vector<Umbrella> mid;
  for (auto& s : samples) mid.push_back(umbrella(g, weight_at(s)));
  std::vector<Rat> jumps;
  for (size_t i = 0; i < c.size(); ++i) {
    Umbrella at = umbrella(g, weight_at(c[i]));
    if (!(mid[i].same_faces(at) && at.same_faces(mid[i + 1]))) jumps.push_back(c[i]);
  }
  return jumps;
}

// regular triangulation from the lower faces of the lift {(a_j, L_j)}
inline Triangulation regular_triangulation(const GkzMatrix& g, const RatVec& L) {
  if (!g.full || !g.pointed) throw GkzError("PreconditionViolation", "need full pointed matrix");
  size_t n = g.n(), d = g.d();
  auto b = detail::lift_columns(g.matrix, L);
  Triangulation tri;
  std::vector<size_t> idx(d);
  std::function<void(size_t, size_t)> rec = [&](size_t start, size_t got) {
    if (got == d) {
      // hyperplane h.b = 0 through the lifted cell with h_{d+1} = 1
      IntMatrix sysm(d + 1, d + 1);
      for (size_t r = 0; r < d; ++r)
        for (size_t c = 0; c < d + 1; ++c) sysm(r, c) = b[idx[r]][c];
      sysm(d, d) = 1;
      RatVec rhs(d + 1, Rat(0));
      rhs[d] = 1;
      auto h = solve_rational(sysm, rhs);
      if (!h || rank_of(sysm) < d + 1) return;
      bool lower = true;
      for (size_t j = 0; j < n && lower; ++j) {
        if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
        Rat v = 0;
        for (size_t c = 0; c < d + 1; ++c) v += (*h)[c] * Rat(b[j][c]);
        if (v == 0) {
          ColSet bad(idx.begin(), idx.end());
          bad.push_back(j);
          std::sort(bad.begin(), bad.end());
          std::string cert;
          for (auto x : bad) cert += (cert.empty() ? "" : ",") + std::to_string(x + 1);
          throw GkzError("NonGenericWeight", "lower face is not a simplex", "face {" + cert + "}");
        }
        if (v < 0) lower = false;
      }
      if (!lower) return;
      IntMatrix sub(d, d);
      for (size_t r = 0; r < d; ++r)
        for (size_t c = 0; c < d; ++c) sub(r, c) = g.matrix(r, idx[c]);
      Int vol = iabs(det(sub));
      if (vol == 0) return;
      ColSet cell(idx.begin(), idx.end());
      tri.maximal_cells.push_back(cell);
      tri.cell_volumes.push_back(vol);
    } else {
      for (size_t j = start; j < n; ++j) {
        idx[got] = j;
        rec(j + 1, got + 1);
      }
    }
  };
  rec(0, 0);
  if (tri.maximal_cells.empty())
    throw GkzError("NonGenericWeight", "no simplicial lower cell found");
  return tri;
}

// normalized volume of conv(0, a_1, ..., a_n); two independent regular
// triangulations are compared to guard the computation
inline Int simplicial_volume(const GkzMatrix& g) {
  std::vector<RatVec> pts;
  pts.emplace_back(g.d(), Rat(0));
  for (size_t j = 0; j < g.n(); ++j) {
    RatVec p(g.d());
    for (size_t i = 0; i < g.d(); ++i) p[i] = Rat(g.matrix(i, j));
    pts.push_back(p);
  }
  Rat v1 = normalized_volume(pts, 1);
  Rat v2 = normalized_volume(pts, 20240817);
  if (v1 != v2) throw GkzError("InternalError", "triangulation-dependent volume");
  if (!is_integer(v1)) throw GkzError("InternalError", "non-integer lattice volume");
  return num(v1);
}

struct HoleReport {
  std::vector<IntVec> holes;  // sorted
  bool complete = false;
};

namespace detail {

// Certificate machinery for d = 2 homogeneous monomial curves: in coordinates
// where the degree row is (1,0), membership of (m, k_min*m + g) in NA means
// g is a sum of at most m elements of the offset set {k_j - k_min}.  Since
// the largest offset c_n is itself available, "g needs no more than
// ceil(g/c_n) summands" propagates from g to g + c_n, so once a full window
// of c_n consecutive offsets is tight the hole offsets are exhausted.
struct CurveCertificate {
  bool finite = false;
  Int max_hole_degree = 0;  // holes only below this degree (inclusive)
};

inline std::optional<CurveCertificate> curve_certificate(const GkzMatrix& g) {
  if (g.d() != 2 || !g.homogeneous()) return std::nullopt;
  // integral primitive degree row
  RatVec hr = *g.homogeneity_row;
  if (!is_integer(hr[0]) || !is_integer(hr[1])) return std::nullopt;
  std::vector<Int> k;
  // second coordinate in a unimodular basis completing the degree row
  IntVec h{num(hr[0]), num(hr[1])};
  // find w with det(h; w) = 1
  IntMatrix hm(1, 2);
  hm(0, 0) = h[0];
  hm(0, 1) = h[1];
  auto s = smith_normal_form(hm);  // U h V = (1 0)
  IntMatrix Vinv = unimodular_inverse(s.V);
  // rows of Vinv: first row is h (up to U=±1); use Vinv row 2 as second coord
  for (size_t j = 0; j < g.n(); ++j) {
    IntVec a = g.column(j);
    k.push_back(Vinv(1, 0) * a[0] + Vinv(1, 1) * a[1]);
  }
  Int kmin = *std::min_element(k.begin(), k.end());
  std::set<Int> offs;
  for (auto& x : k) offs.insert(x - kmin);
  offs.erase(Int(0));
  if (offs.empty()) return std::nullopt;  // a single ray; saturation covers it
  Int cn = *offs.rbegin();
  long long CN = cn.convert_to<long long>();
  long long cap = CN * (CN + 64) + 1;
  const long long INF = -1;
  // rho[v] = least number of offset summands totaling v
  std::vector<long long> rho(cap + 1, INF);
  rho[0] = 0;
  for (long long v = 1; v <= cap; ++v)
    for (auto& c : offs) {
      long long cc = c.convert_to<long long>();
      if (v >= cc && rho[v - cc] != INF && (rho[v] == INF || rho[v - cc] + 1 < rho[v]))
        rho[v] = rho[v - cc] + 1;
    }
  auto tight = [&](long long v) {
    long long need = (v + CN - 1) / CN;
    return rho[v] != INF && rho[v] == need;
  };
  long long window_start = -1;
  for (long long v = 0; v + CN <= cap + 1; ++v) {
    bool ok = true;
    for (long long w = v; w < v + CN; ++w)
      if (!tight(w)) { ok = false; break; }
    if (ok) { window_start = v; break; }
  }
  if (window_start < 0) return std::nullopt;  // could not certify finiteness
  CurveCertificate cert;
  cert.finite = true;
  long long maxdeg = 0;
  for (long long v = 0; v < window_start + CN; ++v)
    if (!tight(v) && rho[v] != INF) maxdeg = std::max(maxdeg, rho[v] - 1);
    else if (rho[v] == INF && v <= window_start)
      return std::nullopt;  // unreachable offset below the window: infinite holes
  cert.max_hole_degree = maxdeg;
  return cert;
}

}  // namespace detail

// cone lattice points missing from NA, up to the given degree (measured by
// the homogeneity row when present, else the positive functional)
inline HoleReport semigroup_holes(const GkzMatrix& g, const Int& degree_bound) {
  size_t d = g.d(), n = g.n();
  RatVec deg_row(d);
  if (g.homogeneous())
    deg_row = *g.homogeneity_row;
  else
    for (size_t i = 0; i < d; ++i) deg_row[i] = Rat(g.positive_functional[i]);
  // bounding box of cone ∩ {deg <= bound}: convex hull of 0 and the scaled rays
  RatVec lo(d, Rat(0)), hi(d, Rat(0));
  for (size_t j = 0; j < n; ++j) {
    Rat dj = 0;
    for (size_t i = 0; i < d; ++i) dj += deg_row[i] * Rat(g.matrix(i, j));
    if (dj <= 0) throw GkzError("InternalError", "degree row not positive on columns");
    for (size_t i = 0; i < d; ++i) {
      Rat v = Rat(degree_bound) * Rat(g.matrix(i, j)) / dj;
      lo[i] = std::min(lo[i], v);
      hi[i] = std::max(hi[i], v);
    }
  }
  HoleReport rep;
  auto facets = cone_facets(g);
  auto in_cone = [&](const IntVec& v) {
    for (auto& f : facets)
      if (dot_ri(f.supporting_normal, v) < 0) return false;
    return true;
  };
  IntVec x(d), xlo(d), xhi(d);
  for (size_t i = 0; i < d; ++i) {
    xlo[i] = rceil(lo[i]);
    xhi[i] = rfloor(hi[i]);
  }
  x = xlo;
  while (true) {
    Rat degv = 0;
    for (size_t i = 0; i < d; ++i) degv += deg_row[i] * Rat(x[i]);
    if (degv >= 0 && degv <= Rat(degree_bound) && in_cone(x) && !semigroup_member(g, x))
      rep.holes.push_back(x);
    size_t i = 0;
    while (i < d && x[i] == xhi[i]) { x[i] = xlo[i]; ++i; }
    if (i == d) break;
    ++x[i];
  }
  std::sort(rep.holes.begin(), rep.holes.end());
  if (rep.holes.empty() && g.saturated == TriState::Yes) rep.complete = true;
  if (rep.holes.empty() && g.saturated == TriState::Unknown &&
      is_saturated(g).state == TriState::Yes)
    rep.complete = true;
  if (!rep.complete) {
    auto cert = detail::curve_certificate(g);
    if (cert && cert->finite && Rat(degree_bound) >= Rat(cert->max_hole_degree))
      rep.complete = true;
  }
  return rep;
}

// multiplicity of the conormal indexed by tau in the L-characteristic cycle
inline Int char_cycle_multiplicity(const GkzMatrix& g, const RatVec& L, const ColSet& tau) {
  size_t d = g.d();
  Umbrella umb = umbrella(g, L);
  if (!umb.contains(tau))
    throw GkzError("FaceNotInUmbrella", "tau is not an (A,L)-umbrella face");
  Int mu = 0;
  for (auto& fp : umb.faces) {
    if (fp.dim != static_cast<int>(d) - 1) continue;
    if (!std::includes(fp.columns.begin(), fp.columns.end(), tau.begin(), tau.end())) continue;
    std::vector<IntVec> cols_p;
    for (auto j : fp.columns) cols_p.push_back(g.column(j));
    auto idx1 = lattice_index(cols_p, [&] {
      std::vector<IntVec> e;
      for (size_t i = 0; i < d; ++i) {
        IntVec v(d, Int(0));
        v[i] = 1;
        e.push_back(v);
      }
      return e;
    }());
    if (!idx1) throw GkzError("InternalError", "umbrella facet of deficient rank");
    // coordinates of the facet columns in a basis of Z tau'
    auto basis = hnf_rows(cols_p);  // d x d
    IntMatrix B(d, d);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) B(i, j) = basis[i][j];
    IntMatrix Bt = B.transposed();
    auto coord = [&](const IntVec& v) {
      RatVec rb(v.size());
      for (size_t i = 0; i < v.size(); ++i) rb[i] = Rat(v[i]);
      auto c = solve_rational(Bt, rb);
      IntVec out(d);
      for (size_t i = 0; i < d; ++i) out[i] = num((*c)[i]);
      return out;
    };
    std::vector<IntVec> tau_coords;
    for (auto j : tau) tau_coords.push_back(coord(g.column(j)));
    auto nbasis = saturated_span_basis(tau_coords, d);  // Z tau' ∩ Q tau, in coords
    Int idx2 = 1;
    if (!tau.empty()) {
      auto i2 = lattice_index(tau_coords, nbasis);
      if (!i2) throw GkzError("InternalError", "face lattice index infinite");
      idx2 = *i2;
    }
    size_t k = nbasis.size();
    // quotient coordinates: complete nbasis to a basis of Z^d; pi = last d-k coords
    IntMatrix V = IntMatrix::identity(d);
    if (k > 0) {
      IntMatrix N(k, d);
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < d; ++j) N(i, j) = nbasis[i][j];
      auto s = smith_normal_form(N);  // U N V = [I 0]
      V = s.V;
    }
    auto pi = [&](const IntVec& c) {
      RatVec out(d - k);
      IntVec full(d, Int(0));
      for (size_t col = 0; col < d; ++col) {
        Int acc = 0;
        for (size_t i = 0; i < d; ++i) acc += c[i] * V(i, col);
        full[col] = acc;
      }
      for (size_t i = k; i < d; ++i) out[i - k] = Rat(full[i]);
      return out;
    };
    std::vector<RatVec> P, Q;
    P.emplace_back(d - k, Rat(0));
    for (auto j : fp.columns) {
      RatVec p = pi(coord(g.column(j)));
      P.push_back(p);
      if (!std::binary_search(tau.begin(), tau.end(), j)) Q.push_back(p);
    }
    Rat vol = volume_difference(P, Q);
    if (!is_integer(vol)) throw GkzError("InternalError", "non-integer multiplicity volume");
    mu += *idx1 * idx2 * num(vol);
  }
  if (mu < 1) throw GkzError("InternalError", "multiplicity below 1");
  return mu;
}

inline SimplicialComplex initial_complex_from_triangulation(const Triangulation& t) {
  SimplicialComplex sc;
  sc.facets = t.maximal_cells;
  std::sort(sc.facets.begin(), sc.facets.end());
  return sc;
}

}  // namespace gkz
