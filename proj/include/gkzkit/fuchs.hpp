#pragma once

#include <map>

#include "core.hpp"

namespace gkz {

// Fuchs polygons of univariate operators written as sums of c * z^r * d/dz^s.

struct ZTerm {
  Rat c;
  Int r, s;
};

namespace fzdetail {

// theta^k = sum_i S(k,i) z^i d^i (Stirling numbers of the second kind)
inline std::vector<IntVec> stirling2(size_t kmax) {
  std::vector<IntVec> S(kmax + 1);
  for (size_t k = 0; k <= kmax; ++k) {
    S[k].assign(k + 1, 0);
    if (k == 0) {
      S[0][0] = 1;
      continue;
    }
    for (size_t i = 1; i <= k; ++i)
      S[k][i] = S[k - 1][i - 1] + (i < S[k - 1].size() ? Int(i) * S[k - 1][i] : Int(0));
  }
  return S;
}

}  // namespace fzdetail

// expand p(theta) * z^zshift into z-terms, p given by coefficient list
inline std::vector<ZTerm> theta_poly_zterms(const RatVec& p, Int zshift = 0) {
  size_t kmax = p.empty() ? 0 : p.size() - 1;
  auto S = fzdetail::stirling2(kmax);
  std::map<std::pair<Int, Int>, Rat> acc;
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    for (size_t i = 0; i <= k; ++i) {
      if (S[k][i] == 0) continue;
      acc[{zshift + Int(i), Int(i)}] += p[k] * Rat(S[k][i]);
    }
  }
  std::vector<ZTerm> out;
  for (auto& [rs, c] : acc)
    if (c != 0) out.push_back({c, rs.first, rs.second});
  return out;
}

struct FuchsPolygon {
  std::vector<std::pair<Int, Int>> points;         // one (F, V) per d-order
  std::vector<std::pair<Int, Int>> hull_vertices;  // upper-right convex chain
  std::vector<Rat> slopes;                         // finite nonzero boundary slopes
  bool regular_at_origin = false;
};

// points (F, V) = (s, s - r) from the lowest z-order coefficient of each
// d^s; the polygon is the lower-left hull, so dominated points drop out and
// the boundary is the upper-right convex chain
inline FuchsPolygon fuchs_polygon(const std::vector<ZTerm>& terms) {
  std::map<std::pair<Int, Int>, Rat> acc;
  for (auto& t : terms) acc[{t.s, t.r}] += t.c;
  std::map<Int, Int> lowest;  // s -> n_s
  for (auto& [sr, c] : acc) {
    if (c == 0) continue;
    auto it = lowest.find(sr.first);
    if (it == lowest.end() || sr.second < it->second) lowest[sr.first] = sr.second;
  }
  if (lowest.empty()) throw GkzError("EmptyOperator", "operator has no terms");
  FuchsPolygon fp;
  for (auto& [s, r] : lowest) fp.points.push_back({s, s - r});
  // drop points dominated in both coordinates
  std::vector<std::pair<Int, Int>> maximal;
  for (auto& p : fp.points) {
    bool dom = false;
    for (auto& q : fp.points)
      if (q != p && q.first >= p.first && q.second >= p.second) { dom = true; break; }
    if (!dom) maximal.push_back(p);
  }
  std::sort(maximal.begin(), maximal.end());
  // upper convex chain (slopes strictly decreasing left to right)
  std::vector<std::pair<Int, Int>> hull;
  for (auto& p : maximal) {
    while (hull.size() >= 2) {
      auto &a = hull[hull.size() - 2], &b = hull.back();
      // keep b only if slope(a,b) > slope(a,p)
      if ((b.second - a.second) * (p.first - a.first) <=
          (p.second - a.second) * (b.first - a.first))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  fp.hull_vertices = hull;
  for (size_t i = 1; i < hull.size(); ++i)
    fp.slopes.push_back(Rat(hull[i].second - hull[i - 1].second) /
                        Rat(hull[i].first - hull[i - 1].first));
  fp.regular_at_origin = hull.size() == 1;
  return fp;
}

// 1/s_F = (1/s_L) / (1/s_L - 1), i.e. s_F = 1 - s_L
inline Rat fuchs_slope_from_L_slope(const Rat& s_L) {
  if (s_L == 0 || s_L == 1)
    throw GkzError("SingularConversion", "conversion undefined at s_L in {0, 1}");
  return Rat(1) - s_L;
}

}  // namespace gkz
