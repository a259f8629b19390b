#include <catch2/catch_amalgamated.hpp>
#include <functional>
#include <gkzkit/lattice.hpp>
#include <random>

using namespace gkz;

// ---- oracles ----------------------------------------------------------------

// Independent SNF-diagonal oracle: s_1*...*s_k = gcd of all k x k minors.
namespace {

Int minor_gcd(const IntMatrix& m, size_t k) {
  std::vector<size_t> ri(k), ci(k);
  Int g = 0;
  std::function<void(size_t, size_t)> choose_rows = [&](size_t start, size_t got) {
    if (got == k) {
      std::function<void(size_t, size_t)> cc = [&](size_t cstart, size_t cgot) {
        if (cgot == k) {
          IntMatrix sub(k, k);
          for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) sub(i, j) = m(ri[i], ci[j]);
          g = igcd(g, det(sub));
          return;
        }
        for (size_t c = cstart; c < m.cols; ++c) {
          ci[cgot] = c;
          cc(c + 1, cgot + 1);
        }
      };
      cc(0, 0);
      return;
    }
    for (size_t r = start; r < m.rows; ++r) {
      ri[got] = r;
      choose_rows(r + 1, got + 1);
    }
  };
  choose_rows(0, 0);
  return g;
}

IntVec snf_diag_oracle(const IntMatrix& m) {
  IntVec out;
  Int prev = 1;
  for (size_t k = 1; k <= std::min(m.rows, m.cols); ++k) {
    Int g = minor_gcd(m, k);
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

IntMatrix kummer() { return IntMatrix{{1, 0, 1}, {0, 1, 1}}; }
IntMatrix m0134() { return IntMatrix{{1, 1, 1, 1}, {0, 1, 3, 4}}; }

bool is_unimodular(const IntMatrix& m) { return iabs(det(m)) == 1; }

IntMatrix matmul(const IntMatrix& x, const IntMatrix& y) {
  IntMatrix z(x.rows, y.cols);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t j = 0; j < y.cols; ++j)
      for (size_t k = 0; k < x.cols; ++k) z(i, j) += x(i, k) * y(k, j);
  return z;
}

void check_snf(const IntMatrix& m) {
  auto r = smith_normal_form(m);
  REQUIRE(matmul(matmul(r.U, m), r.V) == r.S);
  REQUIRE(is_unimodular(r.U));
  REQUIRE(is_unimodular(r.V));
  auto diag = snf_diagonal(m);
  REQUIRE(diag == snf_diag_oracle(m));
  // divisibility chain and off-diagonal zeroes
  for (size_t i = 0; i + 1 < diag.size(); ++i) REQUIRE(diag[i + 1] % diag[i] == 0);
  for (size_t i = 0; i < r.S.rows; ++i)
    for (size_t j = 0; j < r.S.cols; ++j)
      if (i != j) REQUIRE(r.S(i, j) == 0);
}

}  // namespace

TEST_CASE("smith normal form on fixtures and random matrices") {
  check_snf(IntMatrix::identity(2));
  REQUIRE(snf_diagonal(IntMatrix::identity(2)) == IntVec{1, 1});
  check_snf(kummer());
  REQUIRE(snf_diagonal(kummer()) == IntVec{1, 1});
  IntMatrix m23{{2, 0}, {0, 3}};
  check_snf(m23);
  REQUIRE(snf_diagonal(m23) == IntVec{1, 6});
  check_snf(m0134());

  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> dist(-5, 5);
  std::uniform_int_distribution<int> dims(1, 4);
  for (int t = 0; t < 60; ++t) {
    IntMatrix m(dims(rng), dims(rng));
    for (auto& x : m.a) x = dist(rng);
    check_snf(m);
  }
}

TEST_CASE("kernel basis") {
  auto kb = kernel_basis(kummer());
  REQUIRE(kb.size() == 1);
  bool plus = kb[0] == IntVec{1, 1, -1};
  bool minus = kb[0] == IntVec{-1, -1, 1};
  REQUIRE((plus || minus));

  REQUIRE(kernel_basis(IntMatrix{{2, 0}, {0, 3}}).empty());

  // 2F1 matrix of the classical corank-1 example
  IntMatrix f21{{1, 1, 1, 1}, {1, 0, 0, 1}, {0, 1, 0, 1}};
  auto kb2 = kernel_basis(f21);
  REQUIRE(kb2.size() == 1);
  IntVec v = kb2[0];
  if (v[0] < 0)
    for (auto& x : v) x = -x;
  REQUIRE(v == IntVec{1, 1, -1, -1});

  // property: m.K = 0 and rank(K) = n - rank(m)
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (int t = 0; t < 40; ++t) {
    IntMatrix m(2, 4);
    for (auto& x : m.a) x = dist(rng);
    auto kb3 = kernel_basis(m);
    for (auto& u : kb3)
      for (auto& e : m.apply(u)) REQUIRE(e == 0);
    REQUIRE(kb3.size() == m.cols - rank_of(m));
    // HNF canonical: recomputation is identical
    REQUIRE(kernel_basis(m) == kb3);
  }
}

TEST_CASE("validate computes structural flags") {
  auto gk = validate(kummer());
  REQUIRE(gk.full);
  REQUIRE(gk.pointed);
  REQUIRE_FALSE(gk.homogeneity_row.has_value());
  for (size_t j = 0; j < 3; ++j) REQUIRE(dot(gk.positive_functional, gk.matrix.col(j)) > 0);

  auto g0134 = validate(m0134());
  REQUIRE(g0134.full);
  REQUIRE(g0134.pointed);
  REQUIRE(g0134.homogeneity_row.has_value());
  REQUIRE(*g0134.homogeneity_row == RatVec{Rat(1), Rat(0)});

  REQUIRE_THROWS_MATCHES(validate(IntMatrix{{1, -1}}), GkzError,
                         Catch::Matchers::Predicate<GkzError>(
                             [](const GkzError& e) { return e.kind == "NotPointed"; }));
  REQUIRE_THROWS_MATCHES(validate(IntMatrix{{2, 0}, {0, 3}}), GkzError,
                         Catch::Matchers::Predicate<GkzError>(
                             [](const GkzError& e) { return e.kind == "NotFull"; }));

  // idempotence
  auto again = validate(gk.matrix);
  REQUIRE(again.full == gk.full);
  REQUIRE(again.pointed == gk.pointed);
  REQUIRE(again.homogeneity_row == gk.homogeneity_row);
}

TEST_CASE("lattice index") {
  std::vector<IntVec> e2 = {{1, 0}, {0, 1}};
  REQUIRE(lattice_index(e2, e2) == Int(1));
  REQUIRE(lattice_index({{2, 0}, {0, 2}}, e2) == Int(4));
  REQUIRE_FALSE(lattice_index({{1, 1}}, e2).has_value());  // infinity

  // determinant cross-check on random full-rank sublattices of Z^2
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> dist(-6, 6);
  for (int t = 0; t < 50; ++t) {
    IntMatrix s(2, 2);
    for (auto& x : s.a) x = dist(rng);
    if (det(s) == 0) continue;
    auto idx = lattice_index({s.row(0), s.row(1)}, e2);
    REQUIRE(idx == iabs(det(s)));
  }

  REQUIRE_THROWS_MATCHES(lattice_index({{1, 0, 0}}, {{0, 1, 0}}), GkzError,
                         Catch::Matchers::Predicate<GkzError>(
                             [](const GkzError& e) { return e.kind == "SpanViolation"; }));
}

TEST_CASE("semigroup membership and saturation") {
  auto gk = validate(kummer());
  REQUIRE(semigroup_member(gk, {2, 1}));
  REQUIRE_FALSE(semigroup_member(gk, {-1, 0}));
  auto sk = is_saturated(gk);
  REQUIRE(sk.state == TriState::Yes);

  auto g0134 = validate(m0134());
  // (1,2) is the classical missing element of the 0134 semigroup
  REQUIRE_FALSE(semigroup_member(g0134, {1, 2}));
  REQUIRE(semigroup_member(g0134, {2, 3}));
  auto s = is_saturated(g0134);
  REQUIRE(s.state == TriState::No);
  REQUIRE(s.witness == IntVec{1, 2});

  auto gid = validate(IntMatrix::identity(3));
  REQUIRE(is_saturated(gid).state == TriState::Yes);

  REQUIRE(is_saturated(gk, 0).state == TriState::Unknown);
}

TEST_CASE("saturated span basis and solvers") {
  // saturation of the lattice generated by (2,0),(0,2) is Z^2
  auto sb = saturated_span_basis({{2, 0}, {0, 2}}, 2);
  REQUIRE(sb == std::vector<IntVec>{{1, 0}, {0, 1}});
  auto sb2 = saturated_span_basis({{2, 4}}, 2);
  REQUIRE(sb2 == std::vector<IntVec>{{1, 2}});

  auto x = solve_integer(m0134(), {2, 3});
  REQUIRE(x.has_value());
  REQUIRE(m0134().apply(*x) == IntVec{2, 3});
  RatVec b{Rat(1), Rat(1, 2)};
  auto xr = solve_rational(m0134(), b);
  REQUIRE(xr.has_value());
  REQUIRE(m0134().apply(*xr) == b);
}
