// Acceptance checks: one pass/fail line per criterion, nonzero exit on failure.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <gkzkit/gkz.hpp>
#include <gkzkit/hodge.hpp>

using namespace gkz;

namespace {

int failures = 0;

void check(int num, const std::string& what, const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (") + e.what() + ")";
  }
  std::printf("%s criterion %2d: %s%s\n", ok ? "PASS" : "FAIL", num, what.c_str(),
              note.c_str());
  if (!ok) ++failures;
}

GkzMatrix kummer() { return validate(IntMatrix{{1, 0, 1}, {0, 1, 1}}); }
GkzMatrix g0134() { return validate(IntMatrix{{1, 1, 1, 1}, {0, 1, 3, 4}}); }
GkzMatrix g4slopes() { return validate(IntMatrix{{1, 0, 1, 2}, {0, 1, 1, 3}}); }
GkzMatrix ksat() { return validate(IntMatrix{{1, 1, 1}, {0, 1, 1}}); }
GkzMatrix curve012() { return validate(IntMatrix{{1, 1, 1}, {0, 1, 2}}); }

std::vector<ColSet> umbrella_facets(const GkzMatrix& g, const RatVec& L) {
  return umbrella(g, L).skeleton(static_cast<int>(g.d()) - 1);
}

std::string run_cli(const std::string& args) {
  std::string cmd = std::string(GKZ_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  if (FILE* p = popen(cmd.c_str(), "r")) {
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    pclose(p);
  }
  return out;
}

}  // namespace

int main() {
  check(1, "volume 4 and monomial-curve ranks 5/4/4 on the 0134 curve", [] {
    auto g = g0134();
    return simplicial_volume(g) == 4 && monomial_curve_rank(g, {1, 2}) == 5 &&
           monomial_curve_rank(g, {0, 0}) == 4 && monomial_curve_rank(g, {2, 3}) == 4;
  });

  check(2, "toric generators exact (Kummer) and oracle-complete (0134)", [] {
    auto kg = toric_ideal_generators(kummer());
    if (kg.size() != 1 || kg[0].plus != IntVec{1, 1, 0} || kg[0].minus != IntVec{0, 0, 1})
      return false;
    auto g = g0134();
    auto gens = toric_ideal_generators(g);
    TermOrder ord;
    std::vector<Poly> ps;
    for (auto& b : gens) ps.push_back(tordetail::binomial_poly(b, ord));
    auto gb = buchberger(ps, ord);
    // ideal membership of every monomial difference up to total degree 4
    std::vector<IntVec> monos;
    IntVec cur(4, 0);
    std::function<void(size_t, Int)> rec = [&](size_t j, Int left) {
      if (j == 4) {
        monos.push_back(cur);
        return;
      }
      for (Int v = 0; v <= left; ++v) {
        cur[j] = v;
        rec(j + 1, left - v);
      }
      cur[j] = 0;
    };
    rec(0, 4);
    for (size_t i = 0; i < monos.size(); ++i)
      for (size_t k = i + 1; k < monos.size(); ++k) {
        bool same = g.matrix.apply(monos[i]) == g.matrix.apply(monos[k]);
        Poly d = tordetail::make_sorted({{monos[i], Rat(1)}, {monos[k], Rat(-1)}}, ord);
        if (tordetail::reduce(d, gb, ord).zero() != same) return false;
      }
    return true;
  });

  check(3, "Kummer initial-ideal regimes across t in {1, 3/2, 2, 3, 5}", [] {
    auto g = kummer();
    for (auto t : {Rat(1), Rat(3, 2)}) {
      auto ini = initial_ideal(g, {Rat(1), Rat(1), t});
      if (!ini.monomial || ini.ideal.generators != std::vector<IntVec>{{1, 1, 0}})
        return false;
    }
    for (auto t : {Rat(3), Rat(5)}) {
      auto ini = initial_ideal(g, {Rat(1), Rat(1), t});
      if (!ini.monomial || ini.ideal.generators != std::vector<IntVec>{{0, 0, 1}})
        return false;
    }
    auto self = initial_ideal(g, {Rat(1), Rat(1), Rat(2)});
    return !self.monomial && self.forms.size() == 1 &&
           self.forms[0].plus == IntVec{1, 1, 0} && self.forms[0].minus == IntVec{0, 0, 1};
  });

  check(4, "standard pairs and irreducible decomposition of <d4 d5^2>", [] {
    MonomialIdeal m;
    m.generators = {{0, 0, 0, 1, 2}};
    auto pairs = standard_pairs(m, 5);
    std::set<std::pair<IntVec, ColSet>> got, want{
        {{0, 0, 0, 0, 0}, {0, 1, 2, 3}},
        {{0, 0, 0, 0, 1}, {0, 1, 2, 3}},
        {{0, 0, 0, 0, 0}, {0, 1, 2, 4}}};
    for (auto& p : pairs) got.insert({p.base, p.face});
    if (got != want) return false;
    auto comps = irreducible_decomposition(m, 5);
    std::set<std::vector<IntVec>> cg, cw{{{0, 0, 0, 0, 1}},
                                         {{0, 0, 0, 0, 2}},
                                         {{0, 0, 0, 1, 0}}};
    for (auto& c : comps) cg.insert(c.generators);
    if (cg != cw) return false;
    // intersection equality over the full box up to (2,2,2,2,3)
    IntVec x(5, 0), hi{2, 2, 2, 2, 3};
    while (true) {
      bool inter = true;
      for (auto& c : comps) inter = inter && c.contains(x);
      if (inter != m.contains(x)) return false;
      size_t i = 0;
      while (i < 5 && x[i] == hi[i]) x[i++] = 0;
      if (i == 5) break;
      ++x[i];
    }
    return true;
  });

  check(5, "umbrella jump set {2,3} and the five facet families", [] {
    auto g = g4slopes();
    auto jumps = umbrella_jumps(g, {Rat(1), Rat(1), Rat(1), Rat(0)},
                                {Rat(0), Rat(0), Rat(0), Rat(1)}, Rat(1, 2), Rat(16));
    if (jumps != std::vector<Rat>{Rat(2), Rat(3)}) return false;
    auto fam = [&](const Rat& t) {
      return umbrella_facets(g, {Rat(1), Rat(1), Rat(1), t});
    };
    return fam(Rat(3, 2)) == std::vector<ColSet>{{0, 3}, {1, 3}} &&
           fam(Rat(2)) == std::vector<ColSet>{{0, 2, 3}, {1, 3}} &&
           fam(Rat(5, 2)) == std::vector<ColSet>{{0, 2}, {1, 3}, {2, 3}} &&
           fam(Rat(3)) == std::vector<ColSet>{{0, 2}, {1, 2, 3}} &&
           fam(Rat(4)) == std::vector<ColSet>{{0, 2}, {1, 2}};
  });

  check(6, "slopes: {2} for Kummer x3, none iff homogeneous", [] {
    if (slopes_along_hyperplane(kummer(), 2, Rat(1), Rat(10)) != std::vector<Rat>{Rat(2)})
      return false;
    for (auto g : {g0134(), ksat(), curve012()})
      for (size_t j = 0; j < g.n(); ++j)
        if (!slopes_along_hyperplane(g, j, Rat(1, 2), Rat(16)).empty()) return false;
    for (auto g : {kummer(), g4slopes()}) {
      bool any = false;
      for (size_t j = 0; j < g.n(); ++j)
        any = any || !slopes_along_hyperplane(g, j, Rat(1, 2), Rat(16)).empty();
      if (!any) return false;
    }
    return true;
  });

  check(7, "Fuchs polygons and the slope conversion", [] {
    auto reg = fuchs_polygon({{Rat(1), 1, 1}, {Rat(1), 0, 0}});
    auto irr = fuchs_polygon({{Rat(1), 3, 1}, {Rat(2), 0, 0}});
    auto ik = theta_poly_zterms({Rat(0), Rat(-1, 2), Rat(1)}, 1);
    for (auto& t : theta_poly_zterms({Rat(1, 2), Rat(1)}, 0)) ik.push_back({-t.c, t.r, t.s});
    return reg.regular_at_origin && !irr.regular_at_origin &&
           fuchs_polygon(ik).slopes == std::vector<Rat>{Rat(-1)} &&
           fuchs_slope_from_L_slope(Rat(2)) == Rat(-1);
  });

  check(8, "four Gamma-series on 0134 solve the system past truncation", [] {
    auto g = g0134();
    Rat b1(1, 3), b2(1, 5);
    RatVec beta{b1, b2}, L{Rat(0), Rat(1), Rat(2), Rat(0)};
    std::set<RatVec> expected{
        {(4 * b1 - b2) / 4, Rat(0), Rat(0), b2 / 4},
        {(4 * b1 - b2 - 3) / 4, Rat(1), Rat(0), (b2 - 1) / 4},
        {(4 * b1 - b2 - 1) / 4, Rat(0), Rat(1), (b2 - 3) / 4},
        {(4 * b1 - b2 - 6) / 4, Rat(2), Rat(0), (b2 - 2) / 4}};
    auto sys = assemble(g, beta);
    for (auto T : {Rat(4), Rat(8)}) {
      auto series = gamma_series(g, beta, L, T);
      if (series.size() != 4) return false;
      std::set<RatVec> got;
      for (auto& s : series) {
        got.insert(s.exponent);
        auto res = apply_system(sys, s);
        for (auto& w : res.weights)
          if (w <= T) return false;
      }
      if (got != expected) return false;
    }
    return true;
  });

  check(9, "resonance periodicity and NA-interior strong-resonance No", [] {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> rd(-9, 9);
    for (auto g : {kummer(), g0134(), g4slopes()})
      for (int it = 0; it < 100; ++it) {
        RatVec beta(g.d()), shifted(g.d());
        for (size_t i = 0; i < g.d(); ++i) {
          beta[i] = Rat(rd(rng), 1 + std::abs(rd(rng)));
          shifted[i] = beta[i] + Rat(rd(rng));
        }
        if (is_resonant(g, beta).resonant != is_resonant(g, shifted).resonant)
          return false;
      }
    for (auto g : {kummer(), g0134(), g4slopes(), ksat(), curve012()})
      if (!is_resonant(g, RatVec(g.d(), Rat(0))).resonant) return false;
    std::uniform_int_distribution<int> cd(0, 3);
    for (auto g : {kummer(), ksat(), curve012()})
      for (int it = 0; it < 20; ++it) {
        RatVec beta(g.d(), Rat(0));
        for (size_t j = 0; j < g.n(); ++j) {
          int c = cd(rng);
          for (size_t i = 0; i < g.d(); ++i) beta[i] += Rat(c * g.matrix(i, j));
        }
        if (is_strongly_resonant(g, beta).state != TriState::No) return false;
      }
    return true;
  });

  check(10, "Hodge-number formulas: exact fixture and m' totals", [] {
    auto fed = fedorov_numbers(make_params({Rat(0), Rat(0)}, {Rat(1, 2), Rat(1, 2)}));
    if (fed.grading != std::map<Rat, Int>{{Rat(0), 1}, {Rat(1), 1}}) return false;
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> nd(0, 23);
    for (int it = 0; it < 200; ++it) {
      std::set<Rat> lam, mu;
      while (lam.size() < 4) lam.insert(Rat(nd(rng), 24));
      while (mu.size() < 4) {
        Rat v(nd(rng), 24);
        if (!lam.count(v)) mu.insert(v);
      }
      RatVec lv(lam.begin(), lam.end()), mv(mu.begin(), mu.end());
      if (fedorov_numbers(make_params(lv, mv)).total != 4) return false;
      mv.pop_back();
      mv.pop_back();
      if (sabbah_yu_numbers(make_params(lv, mv)).total != 4) return false;
    }
    return true;
  });

  check(11, "characteristic-cycle multiplicities positive; empty face = volume", [] {
    for (auto g : {kummer(), g0134(), g4slopes(), ksat(), curve012()})
      for (auto L : {RatVec(g.n(), Rat(1)), RatVec(g.n(), Rat(0))}) {
        auto u = umbrella(g, L);
        for (auto& f : u.faces)
          if (char_cycle_multiplicity(g, L, f.columns) < 1) return false;
      }
    for (auto g : {ksat(), curve012(), validate(IntMatrix::identity(2))}) {
      // order filtration: unit weights on the differentials
      if (char_cycle_multiplicity(g, RatVec(g.n(), Rat(1)), {}) != simplicial_volume(g))
        return false;
    }
    return true;
  });

  check(12, "Beukers sigma never exceeds the volume", [] {
    std::vector<RatVec> betas{{Rat(0), Rat(0)}, {Rat(0), Rat(1, 2)},
                              {Rat(1, 3), Rat(2, 3)}, {Rat(1, 2), Rat(1, 4)}};
    for (auto g : {ksat(), curve012(), validate(IntMatrix::identity(2))})
      for (auto& beta : betas) {
        auto s = beukers_sigma(g, beta);
        if (!s.complete || s.count > simplicial_volume(g)) return false;
      }
    return true;
  });

  check(13, "initial complexes biject with regular triangulations", [] {
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> wd(1, 30);
    for (auto g : {g0134(), ksat(), curve012()}) {
      for (int it = 0; it < 50; ++it) {
        RatVec L(g.n());
        for (auto& q : L) q = Rat(wd(rng), wd(rng));
        try {
          auto tri = regular_triangulation(g, L);
          auto cells = tri.maximal_cells;
          std::sort(cells.begin(), cells.end());
          auto fac = initial_complex(g, L).facets;
          std::sort(fac.begin(), fac.end());
          if (fac != cells) return false;
          if (tri.total_volume() != simplicial_volume(g)) return false;
        } catch (const GkzError& e) {
          if (e.kind != "NonGenericWeight") return false;
        }
      }
    }
    return true;
  });

  check(14, "CLI JSON output is byte-identical across runs", [] {
    std::vector<std::string> cmds{
        "analyze --A '1 1 1 1; 0 1 3 4' --beta '1,2'",
        "analyze --A '1 0 1; 0 1 1' --beta '-1/2,0'",
        "umbrella --A '1 0 1 2; 0 1 1 3' --L '1,1,1,5/2'",
        "slopes --A '1 0 1; 0 1 1' --hyperplane 3",
        "series --A '1 1 1 1; 0 1 3 4' --beta '1/3,1/5' --L '0,1,2,0' --truncation 6",
        "toric --A '1 1 1 1; 0 1 3 4'",
        "stdpairs --A '1 1 1 1; 0 1 3 4' --L '0,1,2,0'",
        "fuchs --terms '1,3,1; 2,0,0'",
        "hodge fedorov --lambda '0,0' --mu '1/2,1/2'",
        "convert --v '1,1,-1' --c '-1/2,0,0'",
        "convert --A '1 0 1; 0 1 1' --beta '-1/2,0'"};
    for (auto& c : cmds) {
      auto a = run_cli(c), b = run_cli(c);
      if (a.empty() || a != b) return false;
    }
    return true;
  });

  return failures == 0 ? 0 : 1;
}
