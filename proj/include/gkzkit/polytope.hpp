#pragma once

#include <algorithm>
#include <functional>
#include <set>

#include "fourier_motzkin.hpp"
#include "linalg.hpp"

namespace gkz {

// Exact geometry for the tiny rational polytopes that show up in volume and
// multiplicity computations (dimension <= 3, a handful of vertices).

namespace polydetail {

inline std::vector<RatVec> dedupe_points(std::vector<RatVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline Rat det_rat(std::vector<RatVec> m) {
  size_t n = m.size();
  Rat d = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      d = -d;
    }
    d *= m[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      Rat f = m[i][k] / m[k][k];
      for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return d;
}

inline size_t affine_rank(const std::vector<RatVec>& pts) {
  if (pts.size() <= 1) return 0;
  size_t dim = pts[0].size();
  std::vector<RatVec> diffs;
  for (size_t i = 1; i < pts.size(); ++i) {
    RatVec v(dim);
    for (size_t j = 0; j < dim; ++j) v[j] = pts[i][j] - pts[0][j];
    diffs.push_back(v);
  }
  // rational row reduction rank
  size_t r = 0;
  for (size_t c = 0; c < dim && r < diffs.size(); ++c) {
    size_t p = r;
    while (p < diffs.size() && diffs[p][c] == 0) ++p;
    if (p == diffs.size()) continue;
    std::swap(diffs[p], diffs[r]);
    for (size_t i = 0; i < diffs.size(); ++i) {
      if (i == r || diffs[i][c] == 0) continue;
      Rat f = diffs[i][c] / diffs[r][c];
      for (size_t j = 0; j < dim; ++j) diffs[i][j] -= f * diffs[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace polydetail

// Normalized (lattice) volume: dim! times the Lebesgue volume of conv(pts).
// Computed from a regular triangulation: lift with deterministic pseudo-random
// heights, take lower-hull simplices, retry on a degenerate lift. `seed`
// varies the lift so independence of the triangulation can be asserted.
inline Rat normalized_volume(std::vector<RatVec> pts, uint64_t seed = 1) {
  using namespace polydetail;
  pts = dedupe_points(std::move(pts));
  if (pts.empty()) return 0;
  size_t dim = pts[0].size();
  if (affine_rank(pts) < dim) return 0;
  size_t m = pts.size();
  uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
  auto next = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<long long>((state >> 33) & 0xffff);
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Rat> w(m);
    for (size_t i = 0; i < m; ++i) w[i] = Rat(next());
    Rat total = 0;
    bool generic = true;
    std::vector<size_t> idx(dim + 1);
    std::function<bool(size_t, size_t)> cells = [&](size_t start, size_t got) -> bool {
      if (got == dim + 1) {
        // affine l(x)=c.x+c0 through the lifted subset
        std::vector<RatVec> sysm;
        for (size_t r = 0; r < dim + 1; ++r) {
          RatVec row = pts[idx[r]];
          row.push_back(Rat(1));
          sysm.push_back(row);
        }
        std::vector<RatVec> mat = sysm;  // (dim+1)x(dim+1)
        // solve mat.(c,c0) = w by Cramer (tiny systems)
        Rat D = det_rat(mat);
        if (D == 0) return true;  // affinely dependent subset, skip
        RatVec sol(dim + 1);
        for (size_t c = 0; c < dim + 1; ++c) {
          auto tmp = sysm;
          for (size_t r = 0; r < dim + 1; ++r) tmp[r][c] = w[idx[r]];
          sol[c] = det_rat(tmp) / D;
        }
        bool lower = true;
        for (size_t p = 0; p < m && lower; ++p) {
          if (std::find(idx.begin(), idx.end(), p) != idx.end()) continue;
          Rat lv = sol[dim];
          for (size_t j = 0; j < dim; ++j) lv += sol[j] * pts[p][j];
          if (w[p] == lv) { generic = false; return false; }
          if (w[p] < lv) lower = false;
        }
        if (lower) {
          std::vector<RatVec> edges;
          for (size_t r = 1; r < dim + 1; ++r) {
            RatVec e(dim);
            for (size_t j = 0; j < dim; ++j) e[j] = pts[idx[r]][j] - pts[idx[0]][j];
            edges.push_back(e);
          }
          Rat v = det_rat(edges);
          total += (v < 0 ? -v : v);
        }
        return true;
      }
      for (size_t p = start; p < m; ++p) {
        idx[got] = p;
        if (!cells(p + 1, got + 1)) return false;
      }
      return true;
    };
    if (cells(0, 0) && generic) return total;
  }
  throw GkzError("DegenerateLift", "no generic lift found for volume computation");
}

// inward facet halfspaces (c.x >= rhs) of a full-dimensional conv(pts)
inline std::vector<LinIneq> facet_halfspaces(std::vector<RatVec> pts) {
  using namespace polydetail;
  pts = dedupe_points(std::move(pts));
  size_t dim = pts[0].size();
  std::set<std::pair<std::vector<std::string>, std::string>> seen;
  std::vector<LinIneq> out;
  std::vector<size_t> idx(dim);
  std::function<void(size_t, size_t)> rec = [&](size_t start, size_t got) {
    if (got == dim) {
      // normal of the affine span of dim points: nullspace of the difference
      // matrix, found by adding the normal as unknown row
      std::vector<RatVec> diffs;
      for (size_t r = 1; r < dim; ++r) {
        RatVec e(dim);
        for (size_t j = 0; j < dim; ++j) e[j] = pts[idx[r]][j] - pts[idx[0]][j];
        diffs.push_back(e);
      }
      // solve diffs . nvec = 0 over Q: integerize and use kernel_basis
      Int scale = 1;
      for (auto& row : diffs)
        for (auto& q : row) scale = scale / igcd(scale, den(q)) * den(q);
      IntMatrix im(diffs.size() ? diffs.size() : 1, dim);
      for (size_t r = 0; r < diffs.size(); ++r)
        for (size_t j = 0; j < dim; ++j)
          im(r, j) = num(diffs[r][j]) * (scale / den(diffs[r][j]));
      auto kb = kernel_basis(im);
      if (kb.size() != 1) return;  // not a hyperplane spanner
      IntVec nvec = primitive(kb[0]);
      Rat rhs = 0;
      for (size_t j = 0; j < dim; ++j) rhs += Rat(nvec[j]) * pts[idx[0]][j];
      int side = 0;
      for (auto& p : pts) {
        Rat v = 0;
        for (size_t j = 0; j < dim; ++j) v += Rat(nvec[j]) * p[j];
        if (v > rhs) { if (side < 0) return; side = 1; }
        if (v < rhs) { if (side > 0) return; side = -1; }
      }
      if (side == 0) return;  // degenerate polytope
      if (side < 0) {
        for (auto& x : nvec) x = -x;
        rhs = -rhs;
      }
      std::vector<std::string> key;
      for (auto& x : nvec) key.push_back(to_string(x));
      if (seen.insert({key, to_string(rhs)}).second) {
        LinIneq iq;
        iq.c.resize(dim);
        for (size_t j = 0; j < dim; ++j) iq.c[j] = Rat(nvec[j]);
        iq.rhs = rhs;
        out.push_back(std::move(iq));
      }
      return;
    }
    for (size_t p = start; p < pts.size(); ++p) {
      idx[got] = p;
      rec(p + 1, got + 1);
    }
  };
  rec(0, 0);
  return out;
}

// vertices of the intersection of two full-dimensional polytopes
inline std::vector<RatVec> intersection_vertices(const std::vector<RatVec>& P,
                                                 const std::vector<RatVec>& Q) {
  size_t dim = P[0].size();
  auto hs = facet_halfspaces(P);
  auto hq = facet_halfspaces(Q);
  hs.insert(hs.end(), hq.begin(), hq.end());
  std::vector<RatVec> verts;
  std::vector<size_t> idx(dim);
  std::function<void(size_t, size_t)> rec = [&](size_t start, size_t got) {
    if (got == dim) {
      std::vector<RatVec> mat;
      RatVec rhs(dim);
      for (size_t r = 0; r < dim; ++r) {
        mat.push_back(hs[idx[r]].c);
        rhs[r] = hs[idx[r]].rhs;
      }
      // solve mat.x = rhs if unique
      std::vector<RatVec> aug = mat;
      for (size_t r = 0; r < dim; ++r) aug[r].push_back(rhs[r]);
      Rat D = polydetail::det_rat(mat);
      if (D == 0) return;
      RatVec x(dim);
      for (size_t c = 0; c < dim; ++c) {
        auto tmp = mat;
        for (size_t r = 0; r < dim; ++r) tmp[r][c] = rhs[r];
        x[c] = polydetail::det_rat(tmp) / D;
      }
      for (auto& h : hs) {
        Rat v = 0;
        for (size_t j = 0; j < dim; ++j) v += h.c[j] * x[j];
        if (v < h.rhs) return;
      }
      verts.push_back(x);
      return;
    }
    for (size_t p = start; p < hs.size(); ++p) {
      idx[got] = p;
      rec(p + 1, got + 1);
    }
  };
  rec(0, 0);
  return polydetail::dedupe_points(verts);
}

// normalized volume of conv(P) minus conv(Q), assuming conv(Q) ⊆ conv(P)
inline Rat volume_difference(const std::vector<RatVec>& P, const std::vector<RatVec>& Q) {
  Rat vp = normalized_volume(P);
  if (vp == 0) return 0;
  if (Q.empty() || polydetail::affine_rank(polydetail::dedupe_points(Q)) < P[0].size()) return vp;
  auto iv = intersection_vertices(P, Q);
  Rat vq = iv.empty() ? Rat(0) : normalized_volume(iv);
  return vp - vq;
}

}  // namespace gkz
