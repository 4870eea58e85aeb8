#include "oracle.hpp"

#include <fstream>
#include <sstream>

namespace pvforge::oracle {

namespace {

int reduce_index(const Family& f, int k, int& wraps) {
  wraps = 0;
  if (f.D <= 0) return k;
  int r = ((k % f.D) + f.D) % f.D;
  wraps = (k - r) / f.D;
  return r;
}

void accumulate(const Algebra& A, Value& out, Key k, const Elem& c) {
  if (A.K.is_zero(c)) return;
  auto it = out.find(k);
  if (it == out.end()) {
    out.emplace(k, c);
    return;
  }
  it->second = A.K.add(it->second, c);
  if (A.K.is_zero(it->second)) out.erase(it);
}

Elem ratio(const Field& K, const mpq_class& q) { return K.from_rat(q); }

}  // namespace

Value v_scalar(const Algebra& A, const Elem& c) { return v_term(A, 0, 0, c); }

Value v_term(const Algebra& A, int k, int j, const Elem& c) {
  Value v;
  int wk, wj;
  int rk = reduce_index(A.b, k, wk), rj = reduce_index(A.p, j, wj);
  Elem e = c;
  if (wk) e = A.K.mul(e, A.K.pow(A.b.gamma, wk));
  if (wj) e = A.K.mul(e, A.K.pow(A.p.gamma, wj));
  accumulate(A, v, {rk, rj}, e);
  return v;
}

Value v_add(const Algebra& A, const Value& x, const Value& y) {
  Value out = x;
  for (auto& [k, c] : y) accumulate(A, out, k, c);
  return out;
}

Value v_sub(const Algebra& A, const Value& x, const Value& y) {
  Value out = x;
  for (auto& [k, c] : y) accumulate(A, out, k, A.K.neg(c));
  return out;
}

Value v_scale(const Algebra& A, const Value& x, const Elem& c) {
  Value out;
  if (A.K.is_zero(c)) return out;
  for (auto& [k, a] : x) out.emplace(k, A.K.mul(a, c));
  return out;
}

Value v_mul(const Algebra& A, const Value& x, const Value& y) {
  Value out;
  for (auto& [kx, cx] : x)
    for (auto& [ky, cy] : y) {
      Value t = v_term(A, kx.first + ky.first, kx.second + ky.second, A.K.mul(cx, cy));
      for (auto& [k, c] : t) accumulate(A, out, k, c);
    }
  return out;
}

Value v_pow(const Algebra& A, const Value& x, int e) {
  Value r = v_scalar(A, A.K.one());
  for (int i = 0; i < e; ++i) r = v_mul(A, r, x);
  return r;
}

bool v_is_zero(const Algebra&, const Value& x) { return x.empty(); }

bool v_eq(const Algebra& A, const Value& x, const Value& y) { return v_sub(A, x, y).empty(); }

std::string v_str(const Algebra& A, const Value& x) {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : x) {
    if (!first) os << " + ";
    first = false;
    os << "(" << A.K.str(c) << ")";
    if (k.first) os << "*b^" << k.first;
    if (k.second) os << "*p^" << k.second;
  }
  return os.str();
}

Value v_derive(const ClosedForm& c, const Value& x) {
  const Algebra& A = c.alg;
  const Field& K = A.K;
  Value out;
  for (auto& [k, a] : x) {
    accumulate(A, out, k, K.derive(a));
    switch (c.kind) {
      case Kind::Rational: break;
      case Kind::Exponential: accumulate(A, out, k, K.mul(K.from_int(k.first), a)); break;
      case Kind::Radical: {
        Elem lg = K.div(K.derive(A.b.gamma), K.mul(K.from_int(A.b.D), A.b.gamma));
        accumulate(A, out, k, K.mul(K.mul(K.from_int(k.first), lg), a));
        break;
      }
      case Kind::Logarithm:
        if (k.first > 0) accumulate(A, out, {k.first - 1, k.second}, K.mul(K.from_int(k.first), K.div(a, K.t())));
        break;
    }
  }
  return out;
}

mpq_class basis_at_t0(const ClosedForm& c, int k) {
  switch (c.kind) {
    case Kind::Logarithm: return k == 0 ? 1 : 0;
    default: return 1;
  }
}

bool value_at_t0(const ClosedForm& c, const Value& x, mpq_class& out) {
  out = 0;
  for (auto& [k, a] : x) {
    if (k.second) return false;
    mpq_class v;
    if (!value_at(a, c.t0, v)) return false;
    out += v * basis_at_t0(c, k.first);
  }
  return true;
}

namespace {

Algebra function_algebra(Kind kind, int D, const Elem& gamma) {
  Algebra A;
  A.K = Field::Qt();
  A.b.gamma = A.K.one();
  A.p.gamma = A.K.one();
  if (kind == Kind::Radical) {
    A.b.D = D;
    A.b.gamma = gamma;
    A.p.D = D;
  }
  return A;
}

ClosedForm make(const std::string& name, std::vector<std::vector<std::string>> rows, long t0, Kind kind, int D,
                const Elem& gamma) {
  ClosedForm c;
  c.name = name;
  c.system = parse_system(rows);
  c.t0 = t0;
  c.kind = kind;
  c.alg = function_algebra(kind, D, gamma);
  return c;
}

}  // namespace

std::vector<ClosedForm> closed_forms() {
  Field K = Field::Qt();
  Elem t = K.t();
  Elem one = K.one(), half = ratio(K, mpq_class(1, 2));
  std::vector<ClosedForm> out;

  {
    ClosedForm c = make("exp", {{"1"}}, 0, Kind::Exponential, 0, one);
    c.F = {{v_term(c.alg, 1, 0, one)}};
    c.detinv = v_term(c.alg, -1, 0, one);
    out.push_back(c);
  }
  {
    ClosedForm c = make("sqrt", {{"1/(2*t)"}}, 1, Kind::Radical, 2, t);
    c.F = {{v_term(c.alg, 1, 0, one)}};
    c.detinv = v_term(c.alg, 1, 0, K.inv(t));
    out.push_back(c);
  }
  {
    ClosedForm c = make("cube", {{"1/(3*t)"}}, 1, Kind::Radical, 3, t);
    c.F = {{v_term(c.alg, 1, 0, one)}};
    c.detinv = v_term(c.alg, 2, 0, K.inv(t));
    c.m_degree = 3;
    c.group_degree = 3;
    out.push_back(c);
  }
  {
    ClosedForm c = make("torus", {{"0", "1"}, {"1", "0"}}, 0, Kind::Exponential, 0, one);
    const Algebra& A = c.alg;
    Value u = v_term(A, 1, 0, half), w = v_term(A, -1, 0, half);
    Value ch = v_add(A, u, w), sh = v_sub(A, u, w);
    c.F = {{ch, sh}, {sh, ch}};
    c.detinv = v_scalar(A, one);
    out.push_back(c);
  }
  {
    ClosedForm c = make("log", {{"0", "1/t"}, {"0", "0"}}, 1, Kind::Logarithm, 0, one);
    const Algebra& A = c.alg;
    c.F = {{v_scalar(A, one), v_term(A, 1, 0, one)}, {Value{}, v_scalar(A, one)}};
    c.detinv = v_scalar(A, one);
    out.push_back(c);
  }
  {
    ClosedForm c = make("free", {{"0", "1"}, {"0", "0"}}, 0, Kind::Rational, 0, one);
    const Algebra& A = c.alg;
    c.F = {{v_scalar(A, one), v_scalar(A, t)}, {Value{}, v_scalar(A, one)}};
    c.detinv = v_scalar(A, one);
    out.push_back(c);
  }
  return out;
}

const ClosedForm* find_closed_form(const std::string& name) {
  static const std::vector<ClosedForm> all = closed_forms();
  for (auto& c : all)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

Value det_value(const Algebra& A, const std::vector<std::vector<Value>>& F) {
  if (F.size() == 1) return F[0][0];
  if (F.size() != 2) throw Error(Error::Kind::Unsupported, "closed forms are implemented for n <= 2");
  return v_sub(A, v_mul(A, F[0][0], F[1][1]), v_mul(A, F[0][1], F[1][0]));
}

std::vector<std::vector<Value>> adjugate(const Algebra& A, const std::vector<std::vector<Value>>& F) {
  if (F.size() == 1) return {{v_scalar(A, A.K.one())}};
  Elem m1 = A.K.from_int(-1);
  return {{F[1][1], v_scale(A, F[0][1], m1)}, {v_scale(A, F[1][0], m1), F[0][0]}};
}

std::vector<std::vector<Value>> mat_mul_v(const Algebra& A, const std::vector<std::vector<Value>>& X,
                                          const std::vector<std::vector<Value>>& Y) {
  size_t n = X.size();
  std::vector<std::vector<Value>> Z(n, std::vector<Value>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) Z[i][j] = v_add(A, Z[i][j], v_mul(A, X[i][k], Y[k][j]));
  return Z;
}

// Reduced basis of the ideal generated by the polynomials of degree <= nu vanishing on vals.
PolyList kernel_ideal(const Algebra& A, const std::vector<Value>& vals, int nu, const PolyRing& R,
                      const PolyList& extra) {
  int nv = static_cast<int>(vals.size());
  std::vector<Mono> monos = monomials_up_to(nv, nu);
  std::vector<std::vector<Value>> powers(nv);
  for (int i = 0; i < nv; ++i) {
    powers[i].push_back(v_scalar(A, A.K.one()));
    for (int e = 1; e <= nu; ++e) powers[i].push_back(v_mul(A, powers[i].back(), vals[i]));
  }
  std::vector<Value> ev;
  for (auto& m : monos) {
    Value v = v_scalar(A, A.K.one());
    for (int i = 0; i < nv; ++i)
      if (m.e[i]) v = v_mul(A, v, powers[i][m.e[i]]);
    ev.push_back(v);
  }
  PolyList G = extra.empty() ? PolyList{} : groebner(R, extra);
  for (int e = 1; e <= nu; ++e) {
    std::vector<int> cols;
    for (size_t c = 0; c < monos.size(); ++c)
      if (monos[c].deg(nv) <= e) cols.push_back(static_cast<int>(c));
    std::map<Key, int> rowof;
    for (int c : cols)
      for (auto& [k, a] : ev[c]) rowof.emplace(k, 0);
    int r = 0;
    for (auto& [k, idx] : rowof) idx = r++;
    Mat M(r, Vec(cols.size(), A.K.zero()));
    for (size_t j = 0; j < cols.size(); ++j)
      for (auto& [k, a] : ev[cols[j]]) M[rowof[k]][j] = a;
    Mat ker = r ? kernel(A.K, M) : Mat{};
    if (!r) {
      for (size_t j = 0; j < cols.size(); ++j) {
        Vec v(cols.size(), A.K.zero());
        v[j] = A.K.one();
        ker.push_back(v);
      }
    }
    PolyList fresh;
    for (auto& v : ker) {
      std::vector<Term> terms;
      for (size_t j = 0; j < cols.size(); ++j)
        if (!A.K.is_zero(v[j])) terms.push_back({monos[cols[j]], v[j]});
      MPoly p = mp_from_terms(R, terms);
      if (!normal_form(R, p, G).is_zero()) fresh.push_back(p);
    }
    if (!fresh.empty()) {
      for (auto& p : G) fresh.push_back(p);
      G = groebner(R, fresh);
    }
  }
  return G;
}

}  // namespace

bool satisfies_system(const ClosedForm& c) {
  const Algebra& A = c.alg;
  size_t n = c.F.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Value rhs;
      for (size_t k = 0; k < n; ++k) rhs = v_add(A, rhs, v_scale(A, c.F[k][j], c.system.A[i][k]));
      if (!v_eq(A, v_derive(c, c.F[i][j]), rhs)) return false;
    }
  return true;
}

bool normalized_at_t0(const ClosedForm& c) {
  for (size_t i = 0; i < c.F.size(); ++i)
    for (size_t j = 0; j < c.F.size(); ++j) {
      mpq_class v;
      if (!value_at_t0(c, c.F[i][j], v) || v != (i == j ? 1 : 0)) return false;
    }
  return true;
}

bool inverse_determinant_ok(const ClosedForm& c) {
  Value p = v_mul(c.alg, det_value(c.alg, c.F), c.detinv);
  return v_eq(c.alg, p, v_scalar(c.alg, c.alg.K.one()));
}

PolyList evaluation_kernel(const ClosedForm& c, int nu, bool with_d, PolyRing& R) {
  int n = c.system.n();
  R = PolyRing(c.alg.K, matrix_vars(n, with_d));
  std::vector<Value> vals;
  for (auto& row : c.F)
    for (auto& v : row) vals.push_back(v);
  PolyList extra;
  if (with_d) {
    vals.push_back(c.detinv);
    DiffRing D = plain_ring(c.alg.K, n, true);
    extra.push_back(det_relation(D));
  }
  return kernel_ideal(c.alg, vals, nu, R, extra);
}

namespace {

Value apply_sigma(const ClosedForm& c, const Value& x) {
  const Algebra& A = c.alg;
  Value out;
  for (auto& [k, a] : x) {
    if (k.second) throw Error(Error::Kind::Domain, "automorphisms act on function values only");
    switch (c.kind) {
      case Kind::Rational: out = v_add(A, out, v_term(A, k.first, 0, a)); break;
      case Kind::Exponential:
      case Kind::Radical: out = v_add(A, out, v_term(A, k.first, k.first, a)); break;
      case Kind::Logarithm: {
        Value s = v_add(A, v_term(A, 1, 0, A.K.one()), v_term(A, 0, 1, A.K.one()));
        out = v_add(A, out, v_scale(A, v_pow(A, s, k.first), a));
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<Value>> generic_automorphism(const ClosedForm& c, Value& dg) {
  const Algebra& A = c.alg;
  size_t n = c.F.size();
  std::vector<std::vector<Value>> SF(n, std::vector<Value>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) SF[i][j] = apply_sigma(c, c.F[i][j]);
  std::vector<std::vector<Value>> g = mat_mul_v(A, adjugate(A, c.F), SF);
  for (auto& row : g)
    for (auto& v : row) v = v_mul(A, v, c.detinv);
  dg = v_mul(A, det_value(A, c.F), apply_sigma(c, c.detinv));
  return g;
}

GroupIdeal automorphism_group(const ClosedForm& c, int deg) {
  Value dg;
  std::vector<std::vector<Value>> g = generic_automorphism(c, dg);
  Algebra Q;
  Q.K = Field::Q();
  Q.b.gamma = Q.K.one();
  Q.p.D = c.alg.p.D;
  Q.p.gamma = Q.K.one();
  auto to_q = [&](const Value& v) {
    Value out;
    for (auto& [k, a] : v) {
      mpq_class q;
      if (k.first != 0 || !c.alg.K.T->is_rational(c.alg.K.L, a, &q))
        throw Error(Error::Kind::Verify, "automorphism matrix is not constant: " + v_str(c.alg, v));
      out.emplace(k, Q.K.from_rat(q));
    }
    return out;
  };
  std::vector<Value> vals;
  for (auto& row : g)
    for (auto& v : row) vals.push_back(to_q(v));
  vals.push_back(to_q(dg));
  int n = c.system.n();
  PolyRing G(Field::Q(), matrix_vars(n, true, "g", "dg"));
  PolyList eqs = kernel_ideal(Q, vals, deg, G, {});
  return group_ideal(Field::Q(), n, eqs);
}

// ---------- fixtures ----------

std::vector<std::string> catalog_names() { return {"exp", "sqrt", "cube", "torus", "airy", "log", "free"}; }

namespace {

DiffIdeal holder(const PolyRing& R, int n, bool with_d, const PolyList& gb) {
  DiffIdeal I;
  I.D = plain_ring(R.K, n, with_d);
  I.gb = gb;
  return I;
}

}  // namespace

std::string fixture_text(const std::string& name) {
  std::ostringstream os;
  os << "# " << name << "\n";
  if (const ClosedForm* c = find_closed_form(name)) {
    if (!satisfies_system(*c) || !normalized_at_t0(*c) || !inverse_determinant_ok(*c))
      throw Error(Error::Kind::Verify, name + ": closed form fails its self-check");
    int n = c->system.n();
    int nu = static_cast<int>(dn_bound(n).get_si());
    PolyRing R0, R1, R2;
    PolyList rel = evaluation_kernel(*c, nu, false, R0);
    PolyList m = evaluation_kernel(*c, c->m_degree, true, R1);
    PolyList m2 = evaluation_kernel(*c, c->m_degree + 1, true, R2);
    if (!ideal_equal(R1, m, m2)) throw Error(Error::Kind::Verify, name + ": kernel ideal not stable in degree");
    GroupIdeal H = automorphism_group(*c, c->group_degree);
    GroupIdeal H2 = automorphism_group(*c, c->group_degree + 1);
    if (!ideal_equal(H.G, H.gb, H2.gb)) throw Error(Error::Kind::Verify, name + ": group ideal not stable in degree");
    os << "# oracle: evaluation on the closed-form fundamental matrix\n";
    DiffIdeal Irel = holder(R0, n, false, rel), Im = holder(R1, n, true, m);
    os << write_ideal_file(&c->system, &c->t0, R1.K, n, {{"relations", &Irel}, {"m", &Im}});
    os << group_block("galois", H);
    return os.str();
  }
  if (name == "airy") {
    System S = parse_system({{"0", "1"}, {"t", "0"}});
    mpq_class t0 = 0;
    EPoly r = {Field::Q().zero(), Field::Q().one()};
    PolyList m;
    PolyRing R;
    GroupIdeal H;
    if (!kovacic_ideal(r, m, R, H)) throw Error(Error::Kind::Verify, "airy: classification failed");
    // The relations of degree <= d(2) are those of <det X - 1> in K[X].
    PolyRing R0(R.K, matrix_vars(2, false));
    PolyList rel = groebner(R0, {mp_sub(R0, det_x(R0, 2), mp_const(R0, R0.K.one()))});
    os << "# oracle: Kovacic classification of y'' = t y\n";
    DiffIdeal Irel = holder(R0, 2, false, rel), Im = holder(R, 2, true, m);
    os << write_ideal_file(&S, &t0, R.K, 2, {{"relations", &Irel}, {"m", &Im}});
    os << group_block("galois", H);
    return os.str();
  }
  throw Error(Error::Kind::Parse, "no oracle for " + name);
}

Fixture load_fixture(const std::string& dir, const std::string& name) {
  std::ifstream in(dir + "/" + name + ".txt");
  if (!in) throw Error(Error::Kind::Parse, "missing fixture " + name);
  std::ostringstream os;
  os << in.rdbuf();
  Fixture f;
  f.name = name;
  f.file = parse_ideal_file(os.str());
  f.nu = static_cast<int>(dn_bound(f.file.n).get_si());
  return f;
}

}  // namespace pvforge::oracle

namespace pvforge::oracle {

PolyList fixture_ideal(const Fixture& f, const std::string& name, const PolyRing& R) {
  const PolyList* g = f.file.find(name);
  if (!g) throw Error(Error::Kind::Parse, f.name + ": no ideal " + name);
  PolyRing src(f.file.K, matrix_vars(f.file.n, true));
  PolyList out;
  for (auto& p : *g) out.push_back(mp_rename(src, p, R));
  return out;
}

GroupIdeal fixture_group(const Fixture& f, const std::string& name) {
  for (auto& [n, eqs] : f.file.groups)
    if (n == name) return parse_group(Field::Q(), f.file.n, eqs);
  throw Error(Error::Kind::Parse, f.name + ": no group " + name);
}

PipelineConfig fixture_config(const Fixture& f) {
  PipelineConfig cfg;
  cfg.point = f.file.t0;
  return cfg;
}

}  // namespace pvforge::oracle
