#pragma once

#include <algorithm>
#include <map>

#include "core.hpp"

namespace gkz {

// closed halfspace  c.x >= rhs
struct LinIneq {
  RatVec c;
  Rat rhs;
};

struct FMResult {
  bool feasible = false;
  RatVec point;   // a solution when feasible
  RatVec farkas;  // nonnegative multipliers over the input rows otherwise
};

// Exact Fourier-Motzkin elimination, sized for the handful of variables and
// constraints this library ever sees. Eliminates variables in index order;
// back-substitution picks the lower bound when finite (then the upper bound,
// then 0), which keeps solutions deterministic.
inline FMResult fm_feasible(const std::vector<LinIneq>& sys, size_t nv) {
  struct Row {
    RatVec c;
    Rat rhs;
    RatVec mult;  // Farkas certificate tracking
  };
  std::vector<Row> cur;
  cur.reserve(sys.size());
  for (size_t i = 0; i < sys.size(); ++i) {
    Row r{sys[i].c, sys[i].rhs, RatVec(sys.size(), Rat(0))};
    r.mult[i] = 1;
    cur.push_back(std::move(r));
  }
  auto dedupe = [](std::vector<Row>& rows) {
    // keep, per coefficient pattern, only the strongest rhs
    std::map<std::vector<std::string>, size_t> seen;
    std::vector<Row> out;
    for (auto& r : rows) {
      std::vector<std::string> key;
      key.reserve(r.c.size());
      for (auto& q : r.c) key.push_back(to_string(q));
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen[key] = out.size();
        out.push_back(std::move(r));
      } else if (r.rhs > out[it->second].rhs) {
        out[it->second] = std::move(r);
      }
    }
    rows = std::move(out);
  };

  std::vector<std::vector<Row>> stages;  // system before eliminating var v
  for (size_t v = 0; v < nv; ++v) {
    dedupe(cur);
    stages.push_back(cur);
    std::vector<Row> next;
    std::vector<const Row*> pos, neg;
    for (auto& r : cur) {
      if (r.c[v] > 0) pos.push_back(&r);
      else if (r.c[v] < 0) neg.push_back(&r);
      else next.push_back(r);
    }
    // pos:  x_v >= (rhs - rest)/c ; neg:  x_v <= ... ; combine pairwise
    for (auto* p : pos)
      for (auto* q : neg) {
        Row r;
        r.c.resize(nv, Rat(0));
        Rat a = p->c[v], b = -q->c[v];  // a,b > 0
        for (size_t j = 0; j < nv; ++j) r.c[j] = b * p->c[j] + a * q->c[j];
        r.rhs = b * p->rhs + a * q->rhs;
        r.mult.resize(cur.size() > 0 ? p->mult.size() : 0, Rat(0));
        r.mult = p->mult;
        for (auto& m : r.mult) m *= b;
        for (size_t j = 0; j < q->mult.size(); ++j) r.mult[j] += a * q->mult[j];
        next.push_back(std::move(r));
      }
    cur = std::move(next);
  }
  // all variables eliminated: rows are  0 >= rhs
  for (auto& r : cur)
    if (r.rhs > 0) return FMResult{false, {}, r.mult};
  // back-substitute
  RatVec x(nv, Rat(0));
  for (size_t vi = nv; vi-- > 0;) {
    bool has_lo = false, has_hi = false;
    Rat lo = 0, hi = 0;
    for (auto& r : stages[vi]) {
      if (r.c[vi] == 0) continue;
      Rat rest = r.rhs;
      for (size_t j = vi + 1; j < nv; ++j) rest -= r.c[j] * x[j];
      Rat bound = rest / r.c[vi];
      if (r.c[vi] > 0) {
        if (!has_lo || bound > lo) { lo = bound; has_lo = true; }
      } else {
        if (!has_hi || bound < hi) { hi = bound; has_hi = true; }
      }
    }
    if (has_lo) x[vi] = lo;
    else if (has_hi) x[vi] = hi;
    else x[vi] = 0;
  }
  return FMResult{true, x, {}};
}

}  // namespace gkz
