#pragma once

#include "fuchs.hpp"

namespace gkz {

// Closed-form Hodge-dimension formulas for the univariate hypergeometric
// modules H(lambda; mu): regular (Fedorov) and confluent (Sabbah-Yu) counts.

struct HypergeomParams {
  RatVec lambda;  // sorted, in [0,1)
  RatVec mu;      // sorted, in [0,1), disjoint from lambda
};

inline HypergeomParams make_params(RatVec lambda, RatVec mu) {
  std::sort(lambda.begin(), lambda.end());
  std::sort(mu.begin(), mu.end());
  for (auto& v : {lambda, mu})
    for (auto& x : v)
      if (x < 0 || x >= 1)
        throw GkzError("PreconditionViolation", "parameters must lie in [0,1)");
  for (auto& l : lambda)
    for (auto& m : mu)
      if (l == m)
        throw GkzError("PreconditionViolation", "lambda and mu must be disjoint");
  return {std::move(lambda), std::move(mu)};
}

struct HodgeNumbers {
  std::map<Rat, Int> grading;
  Int total = 0;
};

inline HodgeNumbers fedorov_numbers(const HypergeomParams& p) {
  if (p.lambda.size() != p.mu.size())
    throw GkzError("NotRegularCase", "Fedorov formula needs equally many lambda and mu");
  HodgeNumbers h;
  for (size_t s = 1; s <= p.mu.size(); ++s) {
    Int k = -Int(s);
    for (auto& l : p.lambda)
      if (l < p.mu[s - 1]) ++k;
    ++h.grading[Rat(k)];
    ++h.total;
  }
  return h;
}

// allow_equal permits the m' = m degeneration for cross-checks against the
// regular formula; the production contract requires m' > m
inline HodgeNumbers sabbah_yu_numbers(const HypergeomParams& p, bool allow_equal = false) {
  size_t mp = p.lambda.size(), m = p.mu.size();
  if (mp < m || (mp == m && !allow_equal))
    throw GkzError("NotConfluentCase", "Sabbah-Yu formula needs more lambda than mu");
  HodgeNumbers h;
  for (size_t s = 1; s <= mp; ++s) {
    Rat a = -Rat(s) + Rat(Int(mp) - Int(m)) * p.lambda[s - 1];
    for (auto& u : p.mu)
      if (u < p.lambda[s - 1]) a += 1;
    ++h.grading[a];
    ++h.total;
  }
  return h;
}

struct HypergeomOperator {
  RatVec left, right;        // theta-polynomial coefficient lists
  std::vector<ZTerm> terms;  // expansion of prod(th-l) - z prod(th-mu)
  std::vector<std::string> singular_set;
};

inline HypergeomOperator operator_from_params(const HypergeomParams& p) {
  if (p.lambda.empty())
    throw GkzError("EmptyOperator", "at least one lambda parameter is required");
  auto expand = [](const RatVec& roots) {
    RatVec c{Rat(1)};
    for (auto& r : roots) {
      RatVec q(c.size() + 1, Rat(0));
      for (size_t i = 0; i < c.size(); ++i) {
        q[i] -= c[i] * r;
        q[i + 1] += c[i];
      }
      c = std::move(q);
    }
    return c;
  };
  HypergeomOperator op;
  op.left = expand(p.lambda);
  op.right = expand(p.mu);
  op.terms = theta_poly_zterms(op.left, 0);
  for (auto& t : theta_poly_zterms(op.right, 1)) op.terms.push_back({-t.c, t.r, t.s});
  op.singular_set = p.lambda.size() == p.mu.size()
                        ? std::vector<std::string>{"0", "1", "inf"}
                        : std::vector<std::string>{"0", "inf"};
  return op;
}

}  // namespace gkz
