#include "properties.hpp"

#include "pvforge/factor.hpp"

#include <sstream>

namespace pvforge::props {

void PropertyResult::record(bool pass, const std::string& what) {
  ++instances;
  if (pass) return;
  if (!failures) first_failure = what;
  ++failures;
}

namespace {

struct Base {
  const char* name;
  std::vector<std::vector<std::string>> rows;
  std::vector<long> points;
  int group_dim;
};

const std::vector<Base>& bases() {
  static const std::vector<Base> b = {
      {"exp", {{"1"}}, {0, 1, -1, 2}, 1},
      {"sqrt", {{"1/(2*t)"}}, {1, 4, 9}, 0},
      {"cube", {{"1/(3*t)"}}, {1, 8, -1}, 0},
      {"torus", {{"0", "1"}, {"1", "0"}}, {0, 1, 2, -1}, 1},
      {"airy", {{"0", "1"}, {"t", "0"}}, {0, 1, -1}, 3},
      {"log", {{"0", "1/t"}, {"0", "0"}}, {1, 2, -1, 3}, 1},
      {"free", {{"0", "1"}, {"0", "0"}}, {0, 1, -2}, 0},
  };
  return b;
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
}

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Mat random_invertible(Rng& rng, const Field& K, int n) {
  if (n == 1 || uniform(rng, 0, 3) == 0) return mat_identity(K, n);
  for (;;) {
    Mat P(n, Vec(n));
    for (auto& row : P)
      for (auto& e : row) e = K.from_int(uniform(rng, -2, 2));
    if (!K.is_zero(determinant(K, P))) return P;
  }
}

std::string mat_text(const Field& K, const Mat& M) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < M.size(); ++i) {
    os << (i ? "; " : "");
    for (size_t j = 0; j < M[i].size(); ++j) os << (j ? ", " : "") << K.str(M[i][j]);
  }
  os << "]";
  return os.str();
}

struct Instance {
  std::string label;
  System S;
  mpq_class t0;
};

Instance random_instance(Rng& rng, int max_n = 2) {
  for (;;) {
    const Base& b = pick(rng, bases());
    if (static_cast<int>(b.rows.size()) > max_n) continue;
    Instance in;
    System S = parse_system(b.rows);
    Mat P = random_invertible(rng, S.K, S.n()), Pi;
    inverse(S.K, P, Pi);
    in.S = S;
    in.S.A = mat_mul(S.K, mat_mul(S.K, P, S.A), Pi);
    in.t0 = pick(rng, b.points);
    in.label = std::string(b.name) + " P=" + mat_text(S.K, P) + " t0=" + in.t0.get_str();
    return in;
  }
}

}  // namespace

std::vector<CatalogRun> random_catalog_runs(Rng& rng, int count) {
  std::vector<CatalogRun> out;
  for (int i = 0; i < count; ++i) {
    const Base& b = bases()[i % bases().size()];
    CatalogRun r;
    r.base = b.name;
    System S = parse_system(b.rows);
    r.P = random_invertible(rng, S.K, S.n());
    Mat Pi;
    inverse(S.K, r.P, Pi);
    r.system = S;
    r.system.A = mat_mul(S.K, mat_mul(S.K, r.P, S.A), Pi);
    r.t0 = pick(rng, b.points);
    r.expected_group_dim = b.group_dim;
    PipelineConfig cfg;
    cfg.point = r.t0;
    r.result = pv_ring(r.system, cfg);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::string run_label(const CatalogRun& r) {
  return r.base + " P=" + mat_text(r.system.K, r.P) + " t0=" + r.t0.get_str();
}

}  // namespace

PropertyResult delta_certificates(const std::vector<CatalogRun>& runs) {
  PropertyResult res{"delta-certificates of emitted ideals"};
  for (auto& r : runs) {
    const PVResult& p = r.result;
    res.record(ideal_certificate(p.toric.relations.D, p.toric.relations.gb, p.t0), run_label(r) + ": relations");
    res.record(delta_certificate(p.toric.I).ok, run_label(r) + ": toric");
    res.record(delta_certificate(p.kbar.Q1).ok, run_label(r) + ": Q1");
    res.record(delta_certificate(p.kbar.J).ok, run_label(r) + ": J");
    res.record(delta_certificate(p.m).ok, run_label(r) + ": m");
  }
  return res;
}

PropertyResult torsor_dimensions(const std::vector<CatalogRun>& runs) {
  PropertyResult res{"torsor dimension equality"};
  for (auto& r : runs) {
    int dm = dimension(r.result.m), dg = group_dimension(r.result.group);
    res.record(dm == dg && dg == r.expected_group_dim,
               run_label(r) + ": dim V(m) = " + std::to_string(dm) + ", dim stab = " + std::to_string(dg));
  }
  return res;
}

PropertyResult character_certificates(const std::vector<CatalogRun>& runs) {
  PropertyResult res{"hyperexponential certificate identity"};
  for (auto& r : runs) {
    const KbarResult& k = r.result.kbar;
    if (k.lie_shortcut) continue;
    for (auto& c : k.chars) res.record(character_certificate(k.Q, k.Q1, c), run_label(r) + ": " + mp_str(k.Q.D.R, c.h));
  }
  return res;
}

namespace {

RelationResult relations_at(const Instance& in, int nu) {
  RelationConfig cfg;
  cfg.degree = nu;
  cfg.point = in.t0;
  return relation_space(in.S.K, in.S.A, cfg);
}

}  // namespace

PropertyResult relation_monotonicity(Rng& rng, int count) {
  PropertyResult res{"relation-space monotonicity in nu"};
  for (int i = 0; i < count; ++i) {
    Instance in = random_instance(rng);
    int top = in.S.n() == 1 ? 5 : 3;
    int a = static_cast<int>(uniform(rng, 1, top - 1));
    int b = static_cast<int>(uniform(rng, a + 1, top));
    RelationResult ra = relations_at(in, a), rb = relations_at(in, b);
    bool ok = contains(rb.D.R, rb.gb, ra.basis) && contains(rb.D.R, rb.gb, ra.gb);
    res.record(ok, in.label + " nu " + std::to_string(a) + " < " + std::to_string(b));
  }
  return res;
}

PropertyResult stabilizer_antimonotonicity(Rng& rng, int count) {
  PropertyResult res{"stabilizer anti-monotonicity in nu"};
  for (int i = 0; i < count; ++i) {
    Instance in = random_instance(rng);
    int top = in.S.n() == 1 ? 5 : 3;
    int a = static_cast<int>(uniform(rng, 1, top - 1));
    int b = static_cast<int>(uniform(rng, a + 1, top));
    RelationResult ra = relations_at(in, a), rb = relations_at(in, b);
    int n = in.S.n();
    GroupIdeal Ha = stabilizer(ra.D.R, n, ra.gb), Hb = stabilizer(rb.D.R, n, rb.gb);
    res.record(group_subset(Hb, Ha), in.label + " nu " + std::to_string(a) + " < " + std::to_string(b));
  }
  return res;
}

namespace {

MPoly random_poly(Rng& rng, const PolyRing& R, int maxdeg, int terms) {
  const Field& K = R.K;
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    Mono m;
    int budget = static_cast<int>(uniform(rng, 0, maxdeg));
    for (int v = 0; v < R.n() && budget > 0; ++v) {
      int e = static_cast<int>(uniform(rng, 0, budget));
      m.e[v] = static_cast<std::uint16_t>(e);
      budget -= e;
    }
    Elem c = K.from_int(uniform(rng, -3, 3));
    if (K.has_t() && uniform(rng, 0, 2) == 0) c = K.add(c, K.mul(K.from_int(uniform(rng, -2, 2)), K.t()));
    if (!K.is_zero(c)) ts.push_back({m, c});
  }
  return mp_from_terms(R, ts);
}

MPoly spoly(const PolyRing& R, const MPoly& f, const MPoly& g) {
  int n = R.n();
  Mono l = mono_lcm(n, f.lead().m, g.lead().m);
  MPoly a = mp_mul_term(R, f, mono_div(n, l, f.lead().m), R.K.inv(f.lead().c));
  MPoly b = mp_mul_term(R, g, mono_div(n, l, g.lead().m), R.K.inv(g.lead().c));
  return mp_sub(R, a, b);
}

}  // namespace

PropertyResult spolynomials_reduce(Rng& rng, int count) {
  PropertyResult res{"Groebner S-polynomials reduce to zero"};
  for (int i = 0; i < count; ++i) {
    bool over_t = uniform(rng, 0, 3) == 0;
    int nv = static_cast<int>(uniform(rng, 2, 3));
    std::vector<std::string> names = {"x", "y", "z"};
    names.resize(nv);
    PolyRing R(over_t ? Field::Qt() : Field::Q(), names);
    int ng = nv == 2 ? static_cast<int>(uniform(rng, 2, 3)) : 2;
    PolyList gens;
    for (int k = 0; k < ng; ++k) gens.push_back(random_poly(rng, R, over_t ? 2 : 3, static_cast<int>(uniform(rng, 2, 4))));
    std::ostringstream label;
    for (auto& g : gens) label << "[" << mp_str(R, g) << "] ";
    PolyList G;
    try {
      G = groebner(R, gens);
    } catch (const Error& e) {
      res.record(false, label.str() + e.what());
      continue;
    }
    bool ok = true;
    for (size_t a = 0; a < G.size() && ok; ++a)
      for (size_t b = a + 1; b < G.size() && ok; ++b)
        if (!normal_form(R, spoly(R, G[a], G[b]), G).is_zero()) ok = false;
    for (auto& g : gens)
      if (!normal_form(R, g, G).is_zero()) ok = false;
    res.record(ok && is_groebner(R, G), label.str());
  }
  return res;
}

namespace {

bool in_lattice(const ZMat& H, std::vector<mpz_class> m) {
  for (auto& row : H) {
    size_t p = 0;
    while (p < row.size() && row[p] == 0) ++p;
    if (p == row.size()) continue;
    if (m[p] % row[p] != 0) return false;
    mpz_class q = m[p] / row[p];
    for (size_t j = 0; j < m.size(); ++j) m[j] -= q * row[j];
  }
  for (auto& v : m)
    if (v != 0) return false;
  return true;
}

Elem random_certificate(Rng& rng, const Field& K) {
  static const char* residues[] = {"0", "1", "-1", "1/2", "-1/2", "1/3", "2"};
  static const char* centres[] = {"t", "t-1", "t+1", "t^2+1"};
  Elem r = K.mul(K.from_int(uniform(rng, -1, 1)), K.one());
  if (uniform(rng, 0, 2) == 0) r = K.add(r, K.mul(K.from_int(uniform(rng, -1, 1)), K.t()));
  for (const char* c : centres) {
    Elem q = parse_elem(K, c);
    Elem dq = K.derive(q);
    Elem a = parse_elem(K, residues[uniform(rng, 0, 6)]);
    r = K.add(r, K.mul(a, K.div(dq, q)));
    if (uniform(rng, 0, 4) == 0) r = K.add(r, K.div(K.from_int(uniform(rng, -1, 1)), K.mul(q, q)));
  }
  return r;
}

}  // namespace

PropertyResult lattice_soundness_completeness(Rng& rng, int count, int box) {
  PropertyResult res{"lattice soundness and box completeness"};
  Field K = Field::Qt();
  for (int i = 0; i < count; ++i) {
    int l = static_cast<int>(uniform(rng, 1, 3));
    if (l == 3 && uniform(rng, 0, 2)) l = 2;
    std::vector<Elem> rs;
    std::ostringstream label;
    for (int j = 0; j < l; ++j) {
      rs.push_back(random_certificate(rng, K));
      label << "[" << K.str(rs.back()) << "] ";
    }
    CharacterLattice Z = lattice_Z(K, rs);
    bool ok = Z.gens.size() == Z.witnesses.size();
    for (size_t g = 0; g < Z.gens.size() && ok; ++g) {
      Elem sum = K.zero();
      for (int j = 0; j < l; ++j) sum = K.add(sum, K.mul(K.from_rat(mpq_class(Z.gens[g][j])), rs[j]));
      if (!K.eq(log_derivative(K, Z.witnesses[g]), sum)) ok = false;
    }
    int b = l == 3 ? std::min(box, 3) : box;
    std::vector<long> m(l, -b);
    while (ok) {
      Elem sum = K.zero();
      std::vector<mpz_class> mz;
      for (int j = 0; j < l; ++j) {
        sum = K.add(sum, K.mul(K.from_int(m[j]), rs[j]));
        mz.push_back(m[j]);
      }
      bool is_ld = K.is_zero(sum) || is_log_derivative(K, sum).has_value();
      if (is_ld != in_lattice(Z.gens, mz)) ok = false;
      int j = 0;
      while (j < l && m[j] == b) m[j++] = -b;
      if (j == l) break;
      ++m[j];
    }
    res.record(ok, label.str());
  }
  return res;
}

PropertyResult descent_reextension(Rng& rng, int count) {
  PropertyResult res{"descent re-extension identity"};
  static const char* consts[] = {"1", "-1", "2", "-2", "1/2", "3"};
  for (int i = 0; i < count; ++i) {
    int D = static_cast<int>(uniform(rng, 2, 3));
    Field Qt = Field::Qt();
    long k = uniform(rng, 1, 3), a = uniform(rng, 1, 2) * (uniform(rng, 0, 1) ? 1 : -1);
    Elem g = Qt.mul(Qt.from_int(k), Qt.mul(Qt.t(), Qt.add(Qt.t(), Qt.from_int(a))));
    EPoly mp(D + 1, Qt.zero());
    mp[0] = Qt.neg(g);
    mp[D] = Qt.one();
    Field K = adjoin_root(Qt, "z", mp);
    Elem cq = parse_elem(Qt, consts[uniform(rng, 0, 5)]);
    Elem c = K.embed_from(1, cq);
    Elem av = Qt.div(Qt.derive(g), Qt.mul(Qt.from_int(D), g));
    Mat A = {{K.embed_from(1, av)}};
    DiffRing R = diff_ring(K, A, true);
    MPoly gen = mp_sub(R.R, mp_var(R.R, 0), mp_const(R.R, K.mul(c, K.gen(K.L))));
    DiffIdeal S = make_ideal(R, {gen});
    std::string label = "S = {" + mp_str(R.R, gen) + "}, z^" + std::to_string(D) + " = " + Qt.str(g);
    if (!is_delta_ideal(S)) {
      res.record(false, label + ": not a delta-ideal");
      continue;
    }
    GaloisClosure G = galois_closure(K);
    DescentResult d = descend(S, G);
    const PolyRing& M = d.m.D.R;
    Elem cD = Qt.one();
    for (int j = 0; j < D; ++j) cD = Qt.mul(cD, cq);
    MPoly expect = mp_sub(M, mp_pow(M, mp_var(M, 0), D), mp_const(M, Qt.mul(cD, g)));
    bool ok = d.orbit_size == D && contains(M, d.m.gb, {expect}) && dimension(d.m) == 0;
    DiffIdeal up = ideal_mapped(d.m, TowerMap(M.K, G.K, {G.K.zero(), G.K.t()}));
    ok = ok && ideal_equal(up, d.intersection);
    res.record(ok, label);
  }
  return res;
}

}  // namespace pvforge::props
