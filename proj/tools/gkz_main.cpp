#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include <gkzkit/gkz.hpp>
#include <gkzkit/hodge.hpp>

using json = nlohmann::json;
using namespace gkz;

namespace {

constexpr const char* kVersion = "gkzkit 0.1.0";

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool use_color() {
  return std::getenv("GKZKIT_NO_COLOR") == nullptr;
}

Rat parse_rat(const std::string& tok, size_t pos) {
  auto where = " at token " + std::to_string(pos + 1) + " ('" + tok + "')";
  auto slash = tok.find('/');
  try {
    Int p(tok.substr(0, slash));
    if (slash == std::string::npos) return Rat(p);
    Int q(tok.substr(slash + 1));
    if (q == 0) throw ParseError("zero denominator" + where);
    return Rat(p, q);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const ParseError*>(&e)) throw;
    throw ParseError("malformed rational" + where);
  }
}

std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (seps.find(ch) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

RatVec parse_ratvec(const std::string& s) {
  RatVec out;
  auto toks = split(s, ", \t");
  for (size_t i = 0; i < toks.size(); ++i) out.push_back(parse_rat(toks[i], i));
  if (out.empty()) throw ParseError("empty vector");
  return out;
}

IntVec parse_intvec(const std::string& s) {
  IntVec out;
  for (auto& q : parse_ratvec(s)) {
    if (!is_integer(q)) throw ParseError("expected integer entry, got " + to_string(q));
    out.push_back(num(q));
  }
  return out;
}

IntMatrix parse_matrix(const std::string& s) {
  auto rows = split(s, ";");
  if (rows.empty()) throw ParseError("empty matrix");
  std::vector<IntVec> parsed;
  for (auto& r : rows) parsed.push_back(parse_intvec(r));
  IntMatrix m(parsed.size(), parsed[0].size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    if (parsed[i].size() != parsed[0].size())
      throw ParseError("ragged matrix: row " + std::to_string(i + 1) + " has " +
                       std::to_string(parsed[i].size()) + " entries");
    for (size_t j = 0; j < parsed[i].size(); ++j) m(i, j) = parsed[i][j];
  }
  return m;
}

std::pair<Rat, Rat> parse_window(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) throw ParseError("window must be 'lo..hi'");
  return {parse_rat(s.substr(0, dots), 0), parse_rat(s.substr(dots + 2), 1)};
}

Int env_bound(Int fallback) {
  if (const char* b = std::getenv("GKZKIT_BOUND")) return Int(std::string(b));
  return fallback;
}

json rat_json(const Rat& q) { return to_string(q); }

json vec_json(const RatVec& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(rat_json(x));
  return a;
}

json vec_json(const IntVec& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(to_string(x));
  return a;
}

json cols_json(const ColSet& c) {
  json a = json::array();
  for (auto x : c) a.push_back(x);
  return a;
}

json matrix_json(const IntMatrix& m) {
  json a = json::array();
  for (size_t i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (size_t j = 0; j < m.cols; ++j) row.push_back(to_string(m(i, j)));
    a.push_back(row);
  }
  return a;
}

std::string tri_json(TriState t) {
  switch (t) {
    case TriState::Yes: return "yes";
    case TriState::No: return "no";
    default: return "unknown";
  }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int fail_domain(const GkzError& e) {
  json j;
  j["error"]["kind"] = e.kind;
  j["error"]["message"] = e.what();
  if (!e.certificate.empty()) j["error"]["certificate"] = e.certificate;
  emit(j);
  return 2;
}

double svg_x(const Rat& q) { return 40.0 + 40.0 * q.convert_to<double>(); }
double svg_y(const Rat& q) { return 260.0 - 40.0 * q.convert_to<double>(); }

void write_svg(const std::string& path,
               const std::vector<std::pair<Rat, Rat>>& pts,
               const std::vector<std::pair<size_t, size_t>>& edges) {
  std::ofstream out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\"320\" height=\"320\">\n";
  for (auto& [a, b] : edges)
    out << "  <line x1=\"" << svg_x(pts[a].first) << "\" y1=\"" << svg_y(pts[a].second)
        << "\" x2=\"" << svg_x(pts[b].first) << "\" y2=\"" << svg_y(pts[b].second)
        << "\" stroke=\"black\"/>\n";
  for (auto& [x, y] : pts)
    out << "  <circle cx=\"" << svg_x(x) << "\" cy=\"" << svg_y(y)
        << "\" r=\"3\" fill=\"crimson\"/>\n";
  out << "</svg>\n";
}

// ---- subcommand bodies -----------------------------------------------------

int cmd_analyze(const std::string& a_str, const std::string& b_str, Int bound) {
  auto m = parse_matrix(a_str);
  auto beta = parse_ratvec(b_str);
  json j;
  j["input"]["A"] = matrix_json(m);
  j["input"]["beta"] = vec_json(beta);
  j["version"] = kVersion;
  j["determinism"] = "seed-free; output is byte-stable per input and version";
  GkzMatrix g;
  try {
    g = validate_with_saturation(m);
  } catch (const GkzError& e) {
    return fail_domain(e);
  }
  if (beta.size() != g.d())
    return fail_domain(GkzError("DimensionMismatch", "beta length must equal d"));
  j["flags"]["full"] = g.full;
  j["flags"]["pointed"] = g.pointed;
  j["flags"]["homogeneous"] = g.homogeneous();
  j["flags"]["saturated"] = tri_json(g.saturated);
  j["volume"] = to_string(simplicial_volume(g));
  auto res = is_resonant(g, beta);
  j["resonance"]["resonant"] = res.resonant;
  if (res.witness) j["resonance"]["witness_facet"] = cols_json(*res.witness);
  auto sres = is_strongly_resonant(g, beta, bound);
  j["resonance"]["strong"] = tri_json(sres.state);
  if (sres.witness) {
    j["resonance"]["strong_witness"]["column"] = sres.witness->first + 1;
    j["resonance"]["strong_witness"]["shift"] = to_string(sres.witness->second);
  }
  j["rank"]["generic"] = to_string(generic_rank(g));
  bool integral = true;
  for (auto& b : beta) integral = integral && is_integer(b);
  if (integral && g.d() == 2 && g.homogeneous()) {
    IntVec bi;
    for (auto& b : beta) bi.push_back(num(b));
    j["rank"]["at_beta"] = to_string(monomial_curve_rank(g, bi));
  }
  emit(j);
  return 0;
}

int cmd_umbrella(const std::string& a_str, const std::string& l_str,
                 const std::string& svg) {
  auto g = validate(parse_matrix(a_str));
  auto L = parse_ratvec(l_str);
  auto u = umbrella(g, L);
  json j;
  j["input"]["A"] = matrix_json(g.matrix);
  j["input"]["L"] = vec_json(L);
  j["version"] = kVersion;
  json faces = json::array();
  for (auto& f : u.faces) {
    json fj;
    fj["columns"] = cols_json(f.columns);
    fj["dim"] = f.dim;
    faces.push_back(fj);
  }
  j["faces"] = faces;
  json facets = json::array();
  for (auto& c : u.skeleton(static_cast<int>(g.d()) - 1)) facets.push_back(cols_json(c));
  j["facets"] = facets;
  if (!svg.empty() && g.d() == 2) {
    std::vector<std::pair<Rat, Rat>> pts;
    for (size_t jx = 0; jx < g.n(); ++jx) {
      // scaled generators a_j / L_j span the umbrella polyhedron boundary
      Rat s = L[jx] > 0 ? Rat(1) / L[jx] : Rat(1);
      pts.push_back({Rat(g.matrix(0, jx)) * s, Rat(g.matrix(1, jx)) * s});
    }
    std::vector<std::pair<size_t, size_t>> edges;
    for (auto& c : u.skeleton(1))
      if (c.size() == 2) edges.push_back({c[0], c[1]});
    write_svg(svg, pts, edges);
    j["svg"] = svg;
  }
  emit(j);
  return 0;
}

int cmd_slopes(const std::string& a_str, size_t hyperplane, const std::string& window) {
  auto g = validate(parse_matrix(a_str));
  if (hyperplane < 1 || hyperplane > g.n())
    throw ParseError("hyperplane index out of range");
  auto [lo, hi] = parse_window(window);
  json j;
  j["input"]["A"] = matrix_json(g.matrix);
  j["input"]["hyperplane"] = hyperplane;
  j["version"] = kVersion;
  json s = json::array();
  for (auto& q : slopes_along_hyperplane(g, hyperplane - 1, lo, hi))
    s.push_back(rat_json(q));
  j["slopes"] = s;
  emit(j);
  return 0;
}

int cmd_series(const std::string& a_str, const std::string& b_str,
               const std::string& l_str, const std::string& trunc_str) {
  auto g = validate(parse_matrix(a_str));
  auto beta = parse_ratvec(b_str);
  auto L = parse_ratvec(l_str);
  Rat T;
  if (trunc_str.empty()) {
    Rat maxl = 0;
    for (auto& q : L) maxl = std::max(maxl, q < 0 ? Rat(-q) : q);
    T = 8 * maxl;
  } else {
    T = parse_rat(trunc_str, 0);
  }
  auto series = gamma_series(g, beta, L, T);
  json j;
  j["input"]["A"] = matrix_json(g.matrix);
  j["input"]["beta"] = vec_json(beta);
  j["input"]["L"] = vec_json(L);
  j["truncation"] = rat_json(T);
  j["version"] = kVersion;
  json arr = json::array();
  for (auto& s : series) {
    json sj;
    sj["exponent"] = vec_json(s.exponent);
    sj["cell"] = cols_json(s.cell);
    json terms = json::array();
    for (auto& [u, c] : s.terms) {
      json t;
      t["u"] = vec_json(u);
      t["coeff"] = rat_json(c);
      terms.push_back(t);
    }
    sj["terms"] = terms;
    arr.push_back(sj);
  }
  j["series"] = arr;
  emit(j);
  return 0;
}

int cmd_toric(const std::string& a_str) {
  auto g = validate(parse_matrix(a_str));
  json j;
  j["input"]["A"] = matrix_json(g.matrix);
  j["version"] = kVersion;
  json gens = json::array();
  for (auto& b : toric_ideal_generators(g)) {
    json bj;
    bj["plus"] = vec_json(b.plus);
    bj["minus"] = vec_json(b.minus);
    gens.push_back(bj);
  }
  j["generators"] = gens;
  emit(j);
  return 0;
}

int cmd_stdpairs(const std::string& a_str, const std::string& l_str) {
  auto g = validate(parse_matrix(a_str));
  auto L = parse_ratvec(l_str);
  auto ini = initial_ideal(g, L);
  json j;
  j["input"]["A"] = matrix_json(g.matrix);
  j["input"]["L"] = vec_json(L);
  j["version"] = kVersion;
  j["initial_ideal_monomial"] = ini.monomial;
  if (ini.monomial) {
    json gens = json::array();
    for (auto& m : ini.ideal.generators) gens.push_back(vec_json(m));
    j["initial_ideal"] = gens;
    json pairs = json::array();
    for (auto& sp : standard_pairs(ini.ideal, g.n())) {
      json pj;
      pj["base"] = vec_json(sp.base);
      pj["face"] = cols_json(sp.face);
      pairs.push_back(pj);
    }
    j["standard_pairs"] = pairs;
    json comps = json::array();
    for (auto& c : irreducible_decomposition(ini.ideal, g.n())) {
      json cj = json::array();
      for (auto& m : c.generators) cj.push_back(vec_json(m));
      comps.push_back(cj);
    }
    j["irreducible_decomposition"] = comps;
    json fac = json::array();
    for (auto& c : initial_complex(g, L).facets) fac.push_back(cols_json(c));
    j["initial_complex_facets"] = fac;
  }
  emit(j);
  return 0;
}

int cmd_fuchs(const std::string& terms_str, const std::string& svg) {
  std::vector<ZTerm> terms;
  auto groups = split(terms_str, ";");
  for (auto& gstr : groups) {
    auto v = parse_ratvec(gstr);
    if (v.size() != 3) throw ParseError("each term must be 'coeff,zpow,dpow'");
    if (!is_integer(v[1]) || !is_integer(v[2]))
      throw ParseError("z and d powers must be integers");
    terms.push_back({v[0], num(v[1]), num(v[2])});
  }
  auto fp = fuchs_polygon(terms);
  json j;
  j["version"] = kVersion;
  json pts = json::array();
  for (auto& [F, V] : fp.points) pts.push_back({to_string(F), to_string(V)});
  j["points"] = pts;
  json hull = json::array();
  for (auto& [F, V] : fp.hull_vertices) hull.push_back({to_string(F), to_string(V)});
  j["hull"] = hull;
  json slopes = json::array();
  for (auto& s : fp.slopes) slopes.push_back(rat_json(s));
  j["slopes"] = slopes;
  j["regular_at_origin"] = fp.regular_at_origin;
  if (!svg.empty()) {
    std::vector<std::pair<Rat, Rat>> pv;
    for (auto& [F, V] : fp.points) pv.push_back({Rat(F), Rat(V)});
    std::vector<std::pair<size_t, size_t>> edges;
    for (size_t i = 0; i + 1 < fp.hull_vertices.size(); ++i) {
      size_t a = 0, b = 0;
      for (size_t k = 0; k < fp.points.size(); ++k) {
        if (fp.points[k] == fp.hull_vertices[i]) a = k;
        if (fp.points[k] == fp.hull_vertices[i + 1]) b = k;
      }
      edges.push_back({a, b});
    }
    write_svg(svg, pv, edges);
    j["svg"] = svg;
  }
  emit(j);
  return 0;
}

int cmd_hodge(const std::string& formula, const std::string& lam_str,
              const std::string& mu_str) {
  RatVec lam = lam_str.empty() ? RatVec{} : parse_ratvec(lam_str);
  RatVec mu = mu_str.empty() ? RatVec{} : parse_ratvec(mu_str);
  auto p = make_params(lam, mu);
  json j;
  j["input"]["lambda"] = vec_json(lam);
  j["input"]["mu"] = vec_json(mu);
  j["version"] = kVersion;
  if (formula == "operator") {
    auto op = operator_from_params(p);
    json terms = json::array();
    for (auto& t : op.terms) {
      json tj;
      tj["coeff"] = rat_json(t.c);
      tj["zpow"] = to_string(t.r);
      tj["dpow"] = to_string(t.s);
      terms.push_back(tj);
    }
    j["terms"] = terms;
    j["singular_set"] = op.singular_set;
  } else {
    auto h = formula == "fedorov" ? fedorov_numbers(p) : sabbah_yu_numbers(p);
    json grading;
    for (auto& [lvl, dim] : h.grading) grading[to_string(lvl)] = to_string(dim);
    j["grading"] = grading;
    j["total"] = to_string(h.total);
  }
  emit(j);
  return 0;
}

int cmd_convert(const std::string& a_str, const std::string& b_str,
                const std::string& v_str, const std::string& c_str) {
  json j;
  j["version"] = kVersion;
  if (!v_str.empty()) {
    UnivariateOp op;
    op.v = parse_intvec(v_str);
    op.c = parse_ratvec(c_str);
    if (op.c.size() != op.v.size()) throw ParseError("v and c must have equal length");
    auto r = univariate_to_gkz(op);
    j["input"]["v"] = vec_json(op.v);
    j["input"]["c"] = vec_json(op.c);
    j["A"] = matrix_json(r.g.matrix);
    j["beta"] = vec_json(r.beta);
    j["pointed"] = r.pointed;
  } else {
    auto g = validate(parse_matrix(a_str));
    auto beta = parse_ratvec(b_str);
    auto op = gkz_to_univariate(g, beta);
    j["input"]["A"] = matrix_json(g.matrix);
    j["input"]["beta"] = vec_json(beta);
    j["v"] = vec_json(op.v);
    j["c"] = vec_json(op.c);
    auto [left, right] = op.theta_polynomial();
    j["theta_left"] = vec_json(left);
    j["theta_right"] = vec_json(right);
    if (op.has_pfq) {
      j["pfq"]["alpha"] = vec_json(op.alpha);
      j["pfq"]["beta"] = vec_json(op.beta_params);
    }
  }
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gkz - exact tools for A-hypergeometric systems"};
  app.require_subcommand(1);

  std::string a_str, b_str, l_str, v_str, c_str, svg, window = "1/2..16";
  std::string trunc_str, terms_str, lam_str, mu_str, formula;
  size_t hyperplane = 1;
  long long bound_flag = -1;

  auto* an = app.add_subcommand("analyze", "validate and summarize H_A(beta)");
  an->add_option("--A", a_str)->required();
  an->add_option("--beta", b_str)->required();
  an->add_option("--bound", bound_flag);

  auto* um = app.add_subcommand("umbrella", "(A,L)-umbrella faces");
  um->add_option("--A", a_str)->required();
  um->add_option("--L", l_str)->required();
  um->add_option("--svg", svg);

  auto* sl = app.add_subcommand("slopes", "slopes along a coordinate hyperplane");
  sl->add_option("--A", a_str)->required();
  sl->add_option("--hyperplane", hyperplane)->required();
  sl->add_option("--window", window);

  auto* se = app.add_subcommand("series", "Gamma-series solutions");
  se->add_option("--A", a_str)->required();
  se->add_option("--beta", b_str)->required();
  se->add_option("--L", l_str)->required();
  se->add_option("--truncation", trunc_str);

  auto* to = app.add_subcommand("toric", "toric ideal generators");
  to->add_option("--A", a_str)->required();

  auto* st = app.add_subcommand("stdpairs", "initial ideal and standard pairs");
  st->add_option("--A", a_str)->required();
  st->add_option("--L", l_str)->required();

  auto* fu = app.add_subcommand("fuchs", "Fuchs polygon of a z-operator");
  fu->add_option("--terms", terms_str)->required();
  fu->add_option("--svg", svg);

  auto* ho = app.add_subcommand("hodge", "Hodge-number formulas");
  ho->add_option("formula", formula)
      ->required()
      ->check(CLI::IsMember({"fedorov", "sabbah-yu", "operator"}));
  ho->add_option("--lambda", lam_str);
  ho->add_option("--mu", mu_str);

  auto* co = app.add_subcommand("convert", "univariate <-> GKZ dictionary");
  co->add_option("--A", a_str);
  co->add_option("--beta", b_str);
  co->add_option("--v", v_str);
  co->add_option("--c", c_str);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  Int bound = env_bound(32);
  if (bound_flag >= 0) bound = bound_flag;

  try {
    if (an->parsed()) return cmd_analyze(a_str, b_str, bound);
    if (um->parsed()) return cmd_umbrella(a_str, l_str, svg);
    if (sl->parsed()) return cmd_slopes(a_str, hyperplane, window);
    if (se->parsed()) return cmd_series(a_str, b_str, l_str, trunc_str);
    if (to->parsed()) return cmd_toric(a_str);
    if (st->parsed()) return cmd_stdpairs(a_str, l_str);
    if (fu->parsed()) return cmd_fuchs(terms_str, svg);
    if (ho->parsed()) return cmd_hodge(formula, lam_str, mu_str);
    if (co->parsed()) {
      if (v_str.empty() == a_str.empty())
        throw ParseError("convert needs either --v/--c or --A/--beta");
      return cmd_convert(a_str, b_str, v_str, c_str);
    }
  } catch (const ParseError& e) {
    const char* red = use_color() ? "\033[31m" : "";
    const char* off = use_color() ? "\033[0m" : "";
    std::cerr << red << "parse error: " << off << e.what() << "\n";
    return 1;
  } catch (const GkzError& e) {
    return fail_domain(e);
  }
  return 1;
}
