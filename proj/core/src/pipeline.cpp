#include "pvforge/pipeline.hpp"

#include "pvforge/factor.hpp"
#include "pvforge/series.hpp"

#include <cmath>
#include <sstream>

namespace pvforge {

// ---------- bounds ----------

mpz_class dn_bound(int n) {
  if (n < 1) throw Error(Error::Kind::Domain, "d(n) needs n >= 1");
  if (n == 1) return 2;
  if (n == 2) return 6;
  if (n == 3) return 360;
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 4ul * n, 3ul * n * n);
  return r;
}

KappaBound kappa_bound(int n) {
  if (n < 1) throw Error(Error::Kind::Domain, "kappa needs n >= 1");
  KappaBound k;
  k.n = n;
  k.base = 2 * n;
  mpz_ui_pow_ui(k.exponent.get_mpz_t(), 8, static_cast<unsigned long>(n) * n);
  k.exponent *= 3;
  double bits = k.exponent.get_d() * std::log2(2.0 * n);
  if (bits <= (1 << 20)) {
    mpz_class v;
    mpz_pow_ui(v.get_mpz_t(), k.base.get_mpz_t(), k.exponent.get_ui());
    k.leading = v;
  }
  std::string pw = k.base.get_str() + "^" + k.exponent.get_str();
  if (n == 1) {
    k.symbolic = "a*(a+1)*binomial(a+1, floor((a+1)/2))^2, a = 2^24";
  } else {
    std::string n2 = std::to_string(n * n);
    k.symbolic = "a*N*binomial(N, floor(N/2))^2, N = binomial(a+" + n2 + ", " + n2 + "), a = " + pw;
  }
  return k;
}

// ---------- systems ----------

System parse_system(const std::vector<std::vector<std::string>>& rows) {
  System S;
  S.K = Field::Qt();
  for (auto& r : rows) {
    if (r.size() != rows.size()) throw Error(Error::Kind::Parse, "system matrix must be square");
    Vec v;
    for (auto& s : r) v.push_back(parse_elem(S.K, s));
    S.A.push_back(v);
  }
  if (S.A.empty()) throw Error(Error::Kind::Parse, "empty system matrix");
  return S;
}

namespace {

int default_degree(int n, const std::optional<int>& over, const char* what) {
  if (over) return *over;
  if (n >= 3) {
    throw Error(Error::Kind::Bound,
                std::string(what) + ": d(" + std::to_string(n) + ") = " + dn_bound(n).get_str() +
                    " is beyond the working range; pass an explicit degree");
  }
  return static_cast<int>(dn_bound(n).get_si());
}

// Multiplies P by the lcm of its coefficient denominators (coefficients in a rational function level).
MPoly clear_denominators(const PolyRing& R, const MPoly& P) {
  const Field& K = R.K;
  const Tower& T = *K.T;
  int tl = T.trans_level();
  if (tl != K.L) return P;
  int cl = tl - 1;
  EPoly l{T.one(cl)};
  for (auto& t : P.terms) {
    EPoly g = T.pgcd(cl, l, t.c.den);
    l = T.pmul(cl, l, T.pquo(cl, t.c.den, g));
  }
  return mp_scale(R, P, T.frac(tl, l, {T.one(cl)}));
}

Mat embed_matrix(const Field& K, int from, const Mat& M) {
  Mat out = M;
  for (auto& row : out)
    for (auto& a : row) a = K.embed_from(from, a);
  return out;
}

}  // namespace

// ---------- stages ----------

ToricResult toric_ideal(const System& S, const PipelineConfig& cfg) {
  ToricResult T;
  int n = S.n();
  T.nu = default_degree(n, cfg.degree, "toric stage");
  RelationConfig rc;
  rc.degree = T.nu;
  rc.point = cfg.point;
  rc.order = cfg.order;
  T.relations = relation_space(S.K, S.A, rc);
  if (!T.relations.certified) throw Error(Error::Kind::Bound, "relation finder could not certify the relations");
  DiffRing D = diff_ring(S.K, S.A, true);
  PolyList gens;
  for (auto& g : T.relations.gb) gens.push_back(mp_rename(T.relations.D.R, g, D.R));
  DiffIdeal I0 = make_ideal(D, gens);
  try {
    T.I = radical(I0, &T.radical_shape);
  } catch (const Error& e) {
    if (e.kind != Error::Kind::Unsupported) throw;
    T.I = I0;
    T.radical_shape = "unsupported, relation ideal used";
  }
  if (!is_delta_ideal(T.I)) throw Error(Error::Kind::Verify, "toric ideal is not a δ-ideal");
  T.H = stabilizer(T.I);
  return T;
}

KbarResult kbar_ideal(const ToricResult& T, const PipelineConfig& cfg) {
  KbarResult R;
  int n = T.I.D.n;
  R.alpha = find_alpha(T.I, cfg.tower_budget);
  R.H0 = identity_component(T.H, &R.components);
  DiffIdeal Ia = ideal_over(T.I, R.alpha.K);
  int q1 = -1;
  std::vector<DiffIdeal> comps = prime_decompose_torsor(Ia, R.alpha.alpha, T.H, &q1);
  if (q1 < 0) throw Error(Error::Kind::Verify, "no torsor component passes through alpha");
  R.Q1 = comps[q1];
  if (!is_delta_ideal(R.Q1)) throw Error(Error::Kind::Verify, "torsor component is not a δ-ideal");
  R.lie = lie_algebra(R.H0);
  R.kappa = default_degree(n, cfg.char_degree, "character stage");
  if (R.lie.perfect()) {
    R.lie_shortcut = true;
    R.mat.K = R.alpha.K;
    R.J = R.Q1;
    return R;
  }
  R.Q = quotient_connection(R.Q1, R.kappa);
  const QuotientBasis& QB = R.Q;
  const Field& K = R.Q1.D.R.K;
  Mat M = mat_transpose(QB.B);
  for (auto& row : M)
    for (auto& a : row) a = K.neg(a);
  HyperexpConfig hc;
  hc.degree = cfg.hyper_degree;
  std::vector<ExpSolution> sols = hyperexp_solutions(K, M, hc);
  R.chars = normalize_characters(sols, QB, R.Q1, R.alpha.alpha);
  std::vector<Elem> rs;
  for (auto& c : R.chars) rs.push_back(c.r);
  R.Z = lattice_Z(K, rs);
  R.mat = materialize(K, R.Z.witnesses);
  R.constants = lattice_constants(R.Z, R.chars, QB.D, R.alpha.alpha, R.mat, T.relations.t0);
  R.J = assemble_J(R.Q1, R.chars, R.Z, R.mat, R.constants, QB.D);
  return R;
}

bool rational_gauge(const DiffIdeal& m, const mpq_class& t0, Mat& g) {
  int n = m.D.n;
  Field Q = Field::Q();
  DiffRing P = plain_ring(Q, n, true);
  PolyList gens;
  for (auto& f : m.gb) {
    MPoly c = clear_denominators(m.D.R, f);
    std::vector<Term> ts;
    for (auto& t : c.terms) {
      mpq_class v;
      if (!value_at(t.c, t0, v)) return false;
      if (v != 0) ts.push_back(Term{t.m, Q.from_rat(v)});
    }
    gens.push_back(mp_from_terms(P.R, ts));
  }
  DiffIdeal I = make_ideal(P, gens);
  std::vector<Elem> id;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) id.push_back(Q.from_int(i == j ? 1 : 0));
  id.push_back(Q.one());
  bool at_one = true;
  for (auto& f : I.gb)
    if (!Q.is_zero(mp_eval(P.R, f, id))) at_one = false;
  if (at_one) {
    g = mat_identity(Q, n);
    return true;
  }
  AlphaPoint a;
  try {
    a = find_alpha(I, 0);
  } catch (const Error&) {
    return false;
  }
  if (!a.adjoined.empty()) return false;
  g = a.alpha;
  return true;
}

DiffIdeal apply_gauge(const DiffIdeal& m, const Mat& g) {
  const Field& K = m.D.R.K;
  Mat gk = embed_matrix(K, 0, g);
  Elem detinv = K.inv(determinant(K, gk));
  PolyList gens;
  for (auto& f : m.gb) gens.push_back(substitute_matrix(m.D, f, gk, detinv, true));
  DiffIdeal out = make_ideal(m.D, gens);
  out.radical = m.radical;
  out.prime = m.prime;
  return out;
}

PVResult pv_ring(const System& S, const PipelineConfig& cfg) {
  PVResult r;
  r.system = S;
  r.toric = toric_ideal(S, cfg);
  r.t0 = r.toric.relations.t0;
  std::ostringstream os;
  os << "toric: nu=" << r.toric.nu << " t0=" << r.t0 << " radical=" << r.toric.radical_shape
     << " dim=" << dimension(r.toric.I) << " stab_dim=" << group_dimension(r.toric.H);
  r.log.push_back(os.str());
  r.kbar = kbar_ideal(r.toric, cfg);
  os.str("");
  os << "kbar: components=" << r.kbar.components << " lie_dim=" << r.kbar.lie.dim()
     << " derived=" << r.kbar.lie.derived_dim << (r.kbar.lie_shortcut ? " shortcut" : "")
     << " kappa'=" << r.kbar.kappa << " characters=" << r.kbar.chars.size() << " lattice=" << r.kbar.Z.gens.size();
  r.log.push_back(os.str());
  GaloisClosure G = galois_closure(r.kbar.J.D.R.K);
  r.descent = descend(r.kbar.J, G);
  os.str("");
  os << "descent: closure_degree=" << relative_degree(G.K, G.t_level) << " orbit=" << r.descent.orbit_size;
  r.log.push_back(os.str());
  r.m = r.descent.m;
  Mat g;
  if (rational_gauge(r.descent.m, r.t0, g)) {
    if (!mat_eq(Field::Q(), g, mat_identity(Field::Q(), S.n()))) {
      r.m = apply_gauge(r.descent.m, g);
      r.gauged = true;
      r.gauge = g;
    }
    r.log.push_back(std::string("gauge: ") + (r.gauged ? "rational point" : "identity"));
  } else {
    r.log.push_back("gauge: no rational point at t0; m kept as descended");
  }
  if (!is_delta_ideal(r.m)) throw Error(Error::Kind::Verify, "m is not a δ-ideal");
  r.group = stabilizer(r.m);
  r.group_dim = group_dimension(r.group);
  return r;
}

// ---------- verification ----------

bool VerifyReport::ok() const {
  for (auto& i : items)
    if (!i.ok) return false;
  return true;
}

std::string VerifyReport::str() const {
  std::ostringstream os;
  for (auto& i : items) {
    os << (i.ok ? "ok   " : "FAIL ") << i.name;
    if (!i.detail.empty()) os << ": " << i.detail;
    os << "\n";
  }
  return os.str();
}

VerifyReport verify(const VerifyInput& in) {
  VerifyReport rep;
  DiffIdeal m = in.m;
  rep.items.push_back({"delta-certificate m", is_delta_ideal(m), ""});
  rep.items.push_back({"proper m", !is_unit_ideal(m.D.R, m.gb), ""});
  GroupIdeal H = stabilizer(m);
  int dv = dimension(m), dh = group_dimension(H);
  rep.items.push_back({"torsor dimension", dv == dh, "dim V(m) = " + std::to_string(dv) + ", dim stab(m) = " + std::to_string(dh)});

  const Field& K = m.D.R.K;
  CheckItem series{"series vanishing", true, ""};
  try {
    SeriesEmbedding E(K, constant_field(K).from_rat(in.t0), in.order);
    SeriesMatrix F = fundamental_series(E, m.D.A);
    int bad = 0;
    for (auto& f : m.gb)
      if (!E.ring().is_zero(eval_poly_on_series(m.D.R, clear_denominators(m.D.R, f), F, E))) ++bad;
    series.ok = bad == 0;
    series.detail = "order " + std::to_string(in.order) + (bad ? ", " + std::to_string(bad) + " generators nonzero" : "");
  } catch (const Error& e) {
    series.ok = false;
    series.detail = e.what();
  }
  rep.items.push_back(series);

  if (in.toric) {
    DiffIdeal T = *in.toric;
    rep.items.push_back({"delta-certificate toric", is_delta_ideal(T), ""});
    rep.items.push_back({"toric ideal contained in m", ideal_contains(m, T), ""});
    GroupIdeal HT = stabilizer(T);
    rep.items.push_back({"stab(m) contained in stab(toric)", group_subset(H, HT), ""});
  }
  return rep;
}

VerifyReport verify(const PVResult& r, int order) {
  VerifyInput in;
  in.system = r.system;
  in.t0 = r.t0;
  in.m = r.m;
  in.toric = r.toric.I;
  in.order = order;
  VerifyReport rep = verify(in);
  DiffIdeal J = r.kbar.J;
  rep.items.push_back({"delta-certificate J", is_delta_ideal(J), ""});
  DiffIdeal Q1 = r.kbar.Q1;
  rep.items.push_back({"delta-certificate Q1", is_delta_ideal(Q1), ""});
  return rep;
}

// ---------- ideal files ----------

const PolyList* IdealFile::find(const std::string& name) const {
  for (auto& [k, v] : ideals)
    if (k == name) return &v;
  return nullptr;
}

std::string tower_header(const Field& K) {
  std::ostringstream os;
  os << "tower\n";
  for (int l = 1; l <= K.L; ++l) {
    const Level& lev = K.T->level(l);
    if (lev.kind == LevelKind::Transcendental) os << lev.name << "\n";
    else os << lev.name << " : " << K.T->pstr(l - 1, lev.minpoly, lev.name) << "\n";
  }
  os << "end\n";
  return os.str();
}

std::string matrix_str(const Field& K, const Mat& M) {
  std::ostringstream os;
  for (auto& row : M) {
    os << "  [";
    for (size_t j = 0; j < row.size(); ++j) os << (j ? ", " : "") << K.str(row[j]);
    os << "]\n";
  }
  return os.str();
}

std::string write_ideal_file(const System* S, const mpq_class* t0, const Field& K, int n,
                             const std::vector<std::pair<std::string, const DiffIdeal*>>& ideals) {
  std::ostringstream os;
  if (S) {
    os << "system\n" << "n " << S->n() << "\n";
    if (t0) os << "t0 " << *t0 << "\n";
    for (auto& row : S->A) {
      os << "row";
      for (size_t j = 0; j < row.size(); ++j) os << (j ? ", " : " ") << S->K.str(row[j]);
      os << "\n";
    }
    os << "end\n";
  } else {
    os << "system\nn " << n << "\n";
    if (t0) os << "t0 " << *t0 << "\n";
    os << "end\n";
  }
  os << tower_header(K);
  for (auto& [name, I] : ideals) {
    os << "ideal " << name << "\n";
    for (auto& g : I->gb) os << mp_str(I->D.R, g) << "\n";
    os << "end\n";
  }
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char c) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == c) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

IdealFile parse_ideal_file(const std::string& text) {
  IdealFile f;
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> sys, tower;
  std::vector<std::pair<std::string, std::vector<std::string>>> raw;
  std::vector<std::string>* cur = nullptr;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!cur) {
      if (line == "system") cur = &sys;
      else if (line == "tower") cur = &tower;
      else if (line.rfind("ideal", 0) == 0) {
        raw.push_back({trim(line.substr(5)), {}});
        cur = &raw.back().second;
      } else if (line.rfind("group", 0) == 0) {
        f.groups.push_back({trim(line.substr(5)), {}});
        cur = &f.groups.back().second;
      } else {
        throw Error(Error::Kind::Parse, "line " + std::to_string(lineno) + ": unknown block '" + line + "'");
      }
      continue;
    }
    if (line == "end") {
      cur = nullptr;
      continue;
    }
    cur->push_back(line);
  }
  if (cur) throw Error(Error::Kind::Parse, "unterminated block");

  std::vector<std::vector<std::string>> rows;
  for (auto& l : sys) {
    if (l.rfind("n ", 0) == 0) f.n = std::stoi(l.substr(2));
    else if (l.rfind("t0 ", 0) == 0) f.t0 = mpq_class(trim(l.substr(3)));
    else if (l.rfind("row", 0) == 0) rows.push_back(split(l.substr(3), ','));
    else throw Error(Error::Kind::Parse, "bad system line '" + l + "'");
  }
  if (!rows.empty()) {
    f.system = parse_system(rows);
    if (f.n == 0) f.n = f.system->n();
    if (f.n != f.system->n()) throw Error(Error::Kind::Parse, "system size does not match n");
  }
  if (f.n <= 0) throw Error(Error::Kind::Parse, "missing matrix size n");

  f.K = tower.empty() ? Field::Qt() : Field::Q();
  for (auto& l : tower) {
    size_t colon = l.find(':');
    if (colon == std::string::npos) {
      TowerPtr T = f.K.T->adjoin_transcendental(f.K.L, l);
      f.K = Field(T, T->top());
      continue;
    }
    std::string name = trim(l.substr(0, colon));
    PolyRing P(f.K, {name});
    MPoly p = parse_mpoly(P, l.substr(colon + 1));
    int deg = p.degree_in(0);
    if (deg < 1) throw Error(Error::Kind::Parse, "level " + name + " needs a polynomial of positive degree");
    EPoly e(deg + 1, f.K.zero());
    for (auto& t : p.terms) e[t.m.e[0]] = t.c;
    Elem lc = e.back();
    for (auto& c : e) c = f.K.div(c, lc);
    f.K = adjoin_root(f.K, name, e);
  }
  if (f.system && f.K.T->trans_level() != 1)
    throw Error(Error::Kind::Parse, "the tower must start with the transcendental level");

  PolyRing R(f.K, matrix_vars(f.n, true));
  for (auto& [name, gens] : raw) {
    PolyList ps;
    for (auto& g : gens) ps.push_back(parse_mpoly(R, g));
    f.ideals.push_back({name, ps});
  }
  return f;
}

DiffIdeal file_ideal(const IdealFile& f, const std::string& name, const Mat* A) {
  const PolyList* g = f.find(name);
  if (!g) throw Error(Error::Kind::Parse, "no ideal named '" + name + "'");
  DiffRing D = A ? diff_ring(f.K, *A, true) : plain_ring(f.K, f.n, true);
  PolyRing R(f.K, matrix_vars(f.n, true));
  PolyList gens;
  for (auto& p : *g) gens.push_back(mp_rename(R, p, D.R));
  return make_ideal(D, gens);
}

// ---------- reports ----------

std::string group_str(const GroupIdeal& H) { return ideal_str(H.G, H.gb); }

std::string group_block(const std::string& name, const GroupIdeal& H) {
  std::ostringstream os;
  os << "group " << name << "\n";
  for (auto& g : H.gb) os << mp_str(H.G, g) << "\n";
  os << "end\n";
  return os.str();
}

std::string pv_report(const PVResult& r) {
  std::ostringstream os;
  const Field& K = r.system.K;
  os << "system (n = " << r.system.n() << ", t0 = " << r.t0 << ", F(t0) = I)\n" << matrix_str(K, r.system.A);
  os << "toric ideal (nu = " << r.toric.nu << ", " << r.toric.radical_shape << ")\n" << ideal_str(r.toric.I.D.R, r.toric.I.gb);
  os << "toric stabilizer\n" << group_str(r.toric.H);
  os << "alpha\n" << matrix_str(r.kbar.alpha.K, r.kbar.alpha.alpha);
  os << "J\n" << ideal_str(r.kbar.J.D.R, r.kbar.J.gb);
  os << tower_header(r.kbar.J.D.R.K);
  if (r.gauged) os << "gauge\n" << matrix_str(Field::Q(), r.gauge);
  os << "m\n" << ideal_str(r.m.D.R, r.m.gb);
  os << "galois group (dim " << r.group_dim << ")\n" << group_str(r.group);
  os << "log\n";
  for (auto& l : r.log) os << "  " << l << "\n";
  return os.str();
}

}  // namespace pvforge
