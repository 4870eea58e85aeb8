#include "pvforge/ideal.hpp"

#include "pvforge/factor.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pvforge {

// ---------- rings ----------

std::vector<std::string> matrix_vars(int n, bool with_d, const std::string& x, const std::string& d) {
  std::vector<std::string> v;
  if (n == 1) {
    v.push_back(x == "X" ? "x" : x);
  } else {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) v.push_back(x + std::to_string(i) + std::to_string(j));
  }
  if (with_d) v.push_back(d);
  return v;
}

int xindex(int n, int i, int j) { return i * n + j; }

DiffRing plain_ring(const Field& K, int n, bool with_d) {
  DiffRing D;
  D.R = PolyRing(K, matrix_vars(n, with_d));
  D.n = n;
  D.has_d = with_d;
  return D;
}

DiffRing diff_ring(const Field& K, const Mat& A, bool with_d) {
  DiffRing D = plain_ring(K, static_cast<int>(A.size()), with_d);
  D.A = A;
  return D;
}

DiffRing ring_over(const DiffRing& D, const Field& K2) {
  DiffRing E = D;
  E.R = D.R.with_field(K2);
  for (auto& row : E.A)
    for (auto& a : row) a = K2.embed_from(D.R.K.L, a);
  return E;
}

DiffRing ring_mapped(const DiffRing& D, const TowerMap& f) {
  DiffRing E = D;
  E.R = D.R.with_field(f.dst());
  for (auto& row : E.A)
    for (auto& a : row) a = f(a);
  return E;
}

DiffRing without_d(const DiffRing& D) {
  DiffRing E = D;
  E.has_d = false;
  E.R = PolyRing(D.R.K, matrix_vars(D.n, false));
  return E;
}

MPoly det_x(const PolyRing& R, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  MPoly out;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    Mono m;
    for (int i = 0; i < n; ++i) m.e[xindex(n, i, perm[i])] += 1;
    Elem c = R.K.from_int(inv % 2 ? -1 : 1);
    out = mp_add(R, out, mp_from_terms(R, {Term{m, c}}));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

MPoly det_relation(const DiffRing& D) {
  const PolyRing& R = D.R;
  MPoly dv = mp_var(R, D.n * D.n);
  return mp_sub(R, mp_mul(R, dv, det_x(R, D.n)), mp_const(R, R.K.one()));
}

namespace {

std::vector<MPoly> delta_of_vars(const DiffRing& D) {
  const PolyRing& R = D.R;
  int n = D.n;
  std::vector<MPoly> out(R.n());
  if (D.A.empty()) return out;
  Elem tr = R.K.zero();
  for (int i = 0; i < n; ++i) {
    tr = R.K.add(tr, D.A[i][i]);
    for (int j = 0; j < n; ++j) {
      MPoly s;
      for (int k = 0; k < n; ++k)
        if (!R.K.is_zero(D.A[i][k])) s = mp_add(R, s, mp_scale(R, mp_var(R, xindex(n, k, j)), D.A[i][k]));
      out[xindex(n, i, j)] = s;
    }
  }
  if (D.has_d) out[n * n] = mp_scale(R, mp_var(R, n * n), R.K.neg(tr));
  return out;
}

}  // namespace

MPoly delta(const DiffRing& D, const MPoly& P) {
  const PolyRing& R = D.R;
  MPoly out = mp_derive_coeffs(R, P);
  std::vector<MPoly> dv = delta_of_vars(D);
  for (int v = 0; v < R.n(); ++v) {
    if (dv[v].is_zero() || P.degree_in(v) == 0) continue;
    out = mp_add(R, out, mp_mul(R, mp_diff(R, P, v), dv[v]));
  }
  return out;
}

MPoly substitute_matrix(const DiffRing& D, const MPoly& P, const Mat& M, const Elem& detinv, bool right) {
  const PolyRing& R = D.R;
  int n = D.n;
  std::vector<MPoly> img(R.n());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MPoly s;
      for (int k = 0; k < n; ++k) {
        const Elem& c = right ? M[k][j] : M[i][k];
        int v = right ? xindex(n, i, k) : xindex(n, k, j);
        if (!R.K.is_zero(c)) s = mp_add(R, s, mp_scale(R, mp_var(R, v), c));
      }
      img[xindex(n, i, j)] = s;
    }
  if (D.has_d) img[n * n] = mp_scale(R, mp_var(R, n * n), detinv);
  return mp_substitute(R, P, R, img);
}

// ---------- δ-ideals ----------

DiffIdeal make_ideal(const DiffRing& D, const PolyList& gens) {
  DiffIdeal I;
  I.D = D;
  for (auto& g : gens)
    if (!g.is_zero()) I.gens.push_back(g);
  PolyList all = I.gens;
  if (D.has_d) all.push_back(det_relation(D));
  I.gb = groebner(D.R, all);
  return I;
}

DiffIdeal ideal_over(const DiffIdeal& I, const Field& K2) {
  DiffRing D = ring_over(I.D, K2);
  PolyList gens;
  for (auto& g : I.gens) gens.push_back(mp_embed_coeffs(I.D.R, g, D.R));
  DiffIdeal J = make_ideal(D, gens);
  J.radical = I.radical;
  J.delta_ok = I.delta_ok;
  return J;
}

DiffIdeal ideal_mapped(const DiffIdeal& I, const TowerMap& f) {
  DiffRing D = ring_mapped(I.D, f);
  PolyList gens;
  for (auto& g : I.gens) gens.push_back(mp_map_coeffs(I.D.R, g, D.R, f));
  DiffIdeal J = make_ideal(D, gens);
  J.radical = I.radical;
  J.prime = I.prime;
  return J;
}

DeltaCertificate delta_certificate(const DiffIdeal& I) {
  DeltaCertificate c;
  c.ok = true;
  for (auto& g : I.gb) {
    PolyList h;
    MPoly r = normal_form_cofactors(I.D.R, delta(I.D, g), I.gb, h);
    if (!r.is_zero()) c.ok = false;
    c.cofactors.push_back(std::move(h));
  }
  return c;
}

bool is_delta_ideal(DiffIdeal& I) {
  for (auto& g : I.gb)
    if (!normal_form(I.D.R, delta(I.D, g), I.gb).is_zero()) return I.delta_ok = false;
  return I.delta_ok = true;
}

std::vector<int> support_vars(const PolyRing& R, const MPoly& P) {
  std::vector<int> out;
  for (int v = 0; v < R.n(); ++v)
    if (P.degree_in(v) > 0) out.push_back(v);
  return out;
}

PolyList eliminate(const PolyRing& R, const PolyList& I, const std::vector<int>& vars) {
  if (vars.empty()) return groebner(R, I);
  std::vector<std::string> names;
  std::vector<bool> gone(R.n(), false);
  for (int v : vars) {
    names.push_back(R.vars[v]);
    gone[v] = true;
  }
  int k = static_cast<int>(names.size());
  for (int v = 0; v < R.n(); ++v)
    if (!gone[v]) names.push_back(R.vars[v]);
  std::vector<int> blocks{k};
  if (R.n() > k) blocks.push_back(R.n() - k);
  PolyRing E(R.K, names, blocks);
  PolyList gens;
  for (auto& f : I) gens.push_back(mp_rename(R, f, E));
  PolyList gb = groebner(E, gens);
  return groebner(R, elimination_part(E, gb, k, R));
}

PolyList contract_to_x(const DiffIdeal& I) {
  DiffRing X = without_d(I.D);
  if (!I.D.has_d) return I.gb;
  PolyList e = eliminate(I.D.R, I.gb, {I.D.n * I.D.n});
  PolyList out;
  for (auto& g : e) out.push_back(mp_rename(I.D.R, g, X.R));
  return groebner(X.R, out);
}

int dimension(const DiffIdeal& I) { return krull_dimension(I.D.R, I.gb); }

bool ideal_equal(const DiffIdeal& a, const DiffIdeal& b) { return ideal_equal(a.D.R, a.gb, b.gb); }

bool ideal_contains(const DiffIdeal& big, const DiffIdeal& small) { return contains(big.D.R, big.gb, small.gb); }

DiffIdeal intersect(const DiffIdeal& a, const DiffIdeal& b) {
  DiffIdeal I;
  I.D = a.D;
  I.gb = intersect(a.D.R, a.gb, b.gb);
  I.gens = I.gb;
  I.radical = a.radical && b.radical;
  return I;
}

DiffIdeal contract(const DiffIdeal& I, const Field& sub) {
  const Field& K = I.D.R.K;
  DiffRing D = I.D;
  D.R = I.D.R.with_field(sub);
  for (auto& row : D.A)
    for (auto& a : row) {
      Elem lo;
      if (!K.T->lower(K.L, sub.L, a, lo)) throw Error(Error::Kind::Domain, "system matrix is not defined over the subfield");
      a = lo;
    }
  int deg = relative_degree(K, sub.L);
  PolyList gens;
  for (auto& g : I.gb) {
    std::vector<std::vector<Term>> parts(deg);
    for (auto& t : g.terms) {
      std::vector<Elem> c = components(K, sub.L, t.c);
      for (int i = 0; i < deg; ++i)
        if (!sub.is_zero(c[i])) parts[i].push_back(Term{t.m, c[i]});
    }
    for (auto& p : parts)
      if (!p.empty()) gens.push_back(mp_from_terms(D.R, p));
  }
  DiffIdeal J;
  J.D = D;
  J.gens = gens;
  J.gb = groebner(D.R, gens);
  PolyList back;
  for (auto& g : J.gb) back.push_back(mp_embed_coeffs(D.R, g, I.D.R));
  if (!ideal_equal(I.D.R, groebner(I.D.R, back), I.gb))
    throw Error(Error::Kind::Unsupported, "ideal is not defined over the subfield");
  J.radical = I.radical;
  J.prime = I.prime;
  J.delta_ok = I.delta_ok;
  return J;
}

// ---------- algebraic groups ----------

namespace {

Field canonical_constants(const Field& K) {
  Field C = K.has_t() ? constant_field(K) : K;
  if (C.L == 0) return Field::Q();
  return C;
}

PolyRing group_ring(const Field& C, int n) { return PolyRing(C, matrix_vars(n, true, "g", "dg")); }

MPoly move_poly(const PolyRing& R, const MPoly& p, const PolyRing& S) {
  if (R.K.same(S.K)) return mp_rename(R, p, S);
  if (R.K.L == 0 || R.K.T.get() == S.K.T.get()) {
    MPoly q = R.vars == S.vars ? p : mp_rename(R, p, PolyRing(R.K, S.vars, S.blocks));
    return mp_embed_coeffs(PolyRing(R.K, S.vars, S.blocks), q, S);
  }
  throw Error(Error::Kind::Domain, "incompatible coefficient fields");
}

}  // namespace

GroupIdeal group_ideal(const Field& C0, int n, const PolyList& gens) {
  GroupIdeal H;
  Field C = C0.L == 0 ? Field::Q() : C0;
  H.G = group_ring(C, n);
  H.n = n;
  PolyList all;
  for (auto& g : gens)
    if (!g.is_zero()) all.push_back(g);
  all.push_back(mp_sub(H.G, mp_mul(H.G, mp_var(H.G, n * n), det_x(H.G, n)), mp_const(H.G, C.one())));
  H.gb = groebner(H.G, all);
  return H;
}

GroupIdeal parse_group(const Field& C0, int n, const std::vector<std::string>& gens) {
  Field C = C0.L == 0 ? Field::Q() : C0;
  PolyRing G = group_ring(C, n);
  PolyList ps;
  for (auto& s : gens) ps.push_back(parse_mpoly(G, s));
  return group_ideal(C, n, ps);
}

GroupIdeal stabilizer(const PolyRing& R, int n, const PolyList& I) {
  Field K = R.K;
  Field C = canonical_constants(K);
  int tl = K.has_t() ? K.T->trans_level() : -1;
  int nr = R.n();
  bool has_d = nr == n * n + 1;
  PolyRing G = group_ring(C, n);
  std::vector<std::string> names = R.vars;
  for (auto& v : G.vars) names.push_back(v);
  PolyRing RG(K, names);
  std::vector<MPoly> img(nr);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MPoly s;
      for (int k = 0; k < n; ++k)
        s = mp_add(RG, s, mp_mul(RG, mp_var(RG, xindex(n, i, k)), mp_var(RG, nr + xindex(n, k, j))));
      img[xindex(n, i, j)] = s;
    }
  if (has_d) img[n * n] = mp_mul(RG, mp_var(RG, n * n), mp_var(RG, nr + n * n));

  auto gmono = [&](const Mono& m) {
    Mono b;
    for (int v = 0; v < G.n(); ++v) b.e[v] = m.e[nr + v];
    return b;
  };
  auto key = [&](const Mono& m) { return std::vector<std::uint16_t>(m.e.begin(), m.e.begin() + G.n()); };

  PolyList eqs;
  for (auto& P : I) {
    MPoly Pg = mp_substitute(R, P, RG, img);
    std::map<std::vector<std::uint16_t>, std::pair<Mono, std::vector<Term>>> groups;
    for (auto& t : Pg.terms) {
      Mono b = gmono(t.m);
      Mono x;
      for (int v = 0; v < nr; ++v) x.e[v] = t.m.e[v];
      auto& slot = groups[key(b)];
      slot.first = b;
      slot.second.push_back(Term{x, t.c});
    }
    // coefficient of each standard monomial, per g-monomial
    std::map<std::vector<std::uint16_t>, std::pair<Mono, std::vector<std::pair<Mono, Elem>>>> bymu;
    for (auto& [k, slot] : groups) {
      MPoly a = normal_form(R, mp_from_terms(R, slot.second), I);
      for (auto& t : a.terms) {
        auto& e = bymu[std::vector<std::uint16_t>(t.m.e.begin(), t.m.e.begin() + nr)];
        e.first = t.m;
        e.second.push_back({slot.first, t.c});
      }
    }
    for (auto& [k, entry] : bymu) {
      auto& lst = entry.second;
      if (tl < 0) {
        std::vector<Term> ts;
        for (auto& [b, c] : lst) ts.push_back(Term{b, K.L == 0 ? C.from_rat(c.q) : c});
        eqs.push_back(mp_from_terms(G, ts));
        continue;
      }
      int deg = relative_degree(K, tl);
      const Tower& T = *K.T;
      int cl = tl - 1;
      for (int comp = 0; comp < deg; ++comp) {
        std::vector<std::pair<Mono, Elem>> rs;
        EPoly lcm{T.one(cl)};
        for (auto& [b, c] : lst) {
          Elem r = components(K, tl, c)[comp];
          if (T.is_zero(tl, r)) continue;
          EPoly g = T.pgcd(cl, lcm, r.den);
          lcm = T.pmul(cl, lcm, T.pquo(cl, r.den, g));
          rs.push_back({b, r});
        }
        if (rs.empty()) continue;
        std::vector<std::pair<Mono, EPoly>> np;
        size_t maxd = 0;
        for (auto& [b, r] : rs) {
          EPoly p = T.pmul(cl, r.num, T.pquo(cl, lcm, r.den));
          maxd = std::max(maxd, p.size());
          np.push_back({b, p});
        }
        for (size_t e = 0; e < maxd; ++e) {
          std::vector<Term> ts;
          for (auto& [b, p] : np)
            if (e < p.size() && !T.is_zero(cl, p[e])) ts.push_back(Term{b, cl == 0 ? C.from_rat(p[e].q) : p[e]});
          if (!ts.empty()) eqs.push_back(mp_from_terms(G, ts));
        }
      }
    }
  }
  return group_ideal(C, n, eqs);
}

GroupIdeal stabilizer(const DiffIdeal& I) { return stabilizer(I.D.R, I.D.n, I.gb); }

bool group_contains_point(const GroupIdeal& H, const Mat& g) {
  const Field& C = H.G.K;
  std::vector<Elem> pt;
  Mat m = g;
  for (auto& row : g)
    for (auto& a : row) pt.push_back(a);
  Elem det = determinant(C, m);
  if (C.is_zero(det)) return false;
  pt.push_back(C.inv(det));
  for (auto& f : H.gb)
    if (!C.is_zero(mp_eval(H.G, f, pt))) return false;
  return true;
}

bool group_subset(const GroupIdeal& a, const GroupIdeal& b) {
  if (a.n != b.n) return false;
  PolyList bs;
  for (auto& f : b.gb) bs.push_back(move_poly(b.G, f, a.G));
  return contains(a.G, a.gb, bs);
}

bool group_equal(const GroupIdeal& a, const GroupIdeal& b) { return group_subset(a, b) && group_subset(b, a); }

int group_dimension(const GroupIdeal& H) { return krull_dimension(H.G, H.gb); }

LieAlgebra lie_algebra(const GroupIdeal& H) {
  const Field& C = H.G.K;
  int n = H.n, nv = H.G.n();
  std::vector<Elem> id;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) id.push_back(C.from_int(i == j ? 1 : 0));
  id.push_back(C.one());
  Mat J;
  for (auto& f : H.gb) {
    Vec row(nv);
    for (int v = 0; v < nv; ++v) row[v] = mp_eval(H.G, mp_diff(H.G, f, v), id);
    J.push_back(row);
  }
  if (J.empty()) J.push_back(Vec(nv, C.zero()));
  Mat ker = kernel(C, J);
  Mat proj;
  for (auto& k : ker) proj.push_back(Vec(k.begin(), k.begin() + n * n));
  LieAlgebra L;
  L.n = n;
  if (!proj.empty()) {
    std::vector<int> piv = rref(C, proj);
    proj.resize(piv.size());
  }
  L.basis = proj;
  auto as_mat = [&](const Vec& v) {
    Mat m(n, Vec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i][j] = v[xindex(n, i, j)];
    return m;
  };
  Mat br;
  for (size_t i = 0; i < L.basis.size(); ++i)
    for (size_t j = i + 1; j < L.basis.size(); ++j) {
      Mat x = as_mat(L.basis[i]), y = as_mat(L.basis[j]);
      Mat xy = mat_mul(C, x, y), yx = mat_mul(C, y, x);
      Vec v(n * n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) v[xindex(n, a, b)] = C.sub(xy[a][b], yx[a][b]);
      br.push_back(v);
    }
  L.derived_dim = br.empty() ? 0 : rank(C, br);
  return L;
}

// ---------- radicals ----------

namespace {

// g = c*x_v + h with c a nonzero constant and h free of x_v.
bool find_linear(const PolyRing& R, const PolyList& gb, bool constant_coeff, size_t& gi, int& v, MPoly& coeff, MPoly& rest) {
  bool found = false;
  size_t best_terms = 0;
  for (size_t i = 0; i < gb.size(); ++i) {
    const MPoly& g = gb[i];
    for (int x = 0; x < R.n(); ++x) {
      if (g.degree_in(x) != 1) continue;
      std::vector<Term> a, b;
      for (auto& t : g.terms) {
        if (t.m.e[x]) {
          Term u = t;
          u.m.e[x] = 0;
          a.push_back(u);
        } else {
          b.push_back(t);
        }
      }
      MPoly A = mp_from_terms(R, a);
      if (A.is_constant() != constant_coeff) continue;
      if (constant_coeff) {
        gi = i;
        v = x;
        coeff = A;
        rest = mp_from_terms(R, b);
        return true;
      }
      if (!found || A.terms.size() < best_terms) {
        found = true;
        best_terms = A.terms.size();
        gi = i;
        v = x;
        coeff = A;
        rest = mp_from_terms(R, b);
      }
    }
  }
  return found;
}

PolyList substitute_var(const PolyRing& R, const PolyList& gb, size_t skip, int v, const MPoly& img) {
  std::vector<MPoly> imgs(R.n());
  for (int i = 0; i < R.n(); ++i) imgs[i] = i == v ? img : mp_var(R, i);
  PolyList out;
  for (size_t i = 0; i < gb.size(); ++i) {
    if (i == skip) continue;
    MPoly s = mp_substitute(R, gb[i], R, imgs);
    if (!s.is_zero()) out.push_back(s);
  }
  return out;
}

EPoly to_univariate(const PolyRing& R, const MPoly& f, int v) {
  EPoly p(f.degree_in(v) + 1, R.K.zero());
  for (auto& t : f.terms) p[t.m.e[v]] = t.c;
  R.K.T->ptrim(R.K.L, p);
  return p;
}

MPoly from_univariate(const PolyRing& R, const EPoly& p, int v) {
  std::vector<Term> ts;
  for (size_t i = 0; i < p.size(); ++i) {
    if (R.K.is_zero(p[i])) continue;
    Mono m;
    m.e[v] = static_cast<std::uint16_t>(i);
    ts.push_back(Term{m, p[i]});
  }
  return mp_from_terms(R, ts);
}

bool univariate_element(const PolyRing& R, const PolyList& gb, size_t& gi, int& v) {
  for (size_t i = 0; i < gb.size(); ++i) {
    std::vector<int> s = support_vars(R, gb[i]);
    if (s.size() == 1) {
      gi = i;
      v = s[0];
      return true;
    }
  }
  return false;
}

}  // namespace

RadicalResult radical(const PolyRing& R, const PolyList& I) {
  PolyList gb = groebner(R, I);
  if (gb.empty()) return {gb, "zero"};
  if (is_unit_ideal(R, gb)) return {gb, "unit"};
  size_t gi;
  int v;
  MPoly c, h;
  if (find_linear(R, gb, true, gi, v, c, h)) {
    MPoly img = mp_scale(R, h, R.K.neg(R.K.inv(c.terms[0].c)));
    RadicalResult sub = radical(R, substitute_var(R, gb, gi, v, img));
    PolyList all = sub.gb;
    all.push_back(gb[gi]);
    return {groebner(R, all), "linear"};
  }
  if (gb.size() == 1) {
    MPoly f = gb[0], g = f;
    for (int x : support_vars(R, f)) {
      if (g.is_constant()) break;
      g = poly_gcd(R, g, mp_diff(R, f, x));
    }
    if (g.is_constant()) return {gb, "principal"};
    MPoly q;
    poly_divide(R, f, g, q);
    return {groebner(R, {q}), "principal"};
  }
  std::vector<bool> used(R.n(), false);
  for (auto& g : gb)
    for (int x : support_vars(R, g)) used[x] = true;
  std::vector<std::string> names;
  for (int x = 0; x < R.n(); ++x)
    if (used[x]) names.push_back(R.vars[x]);
  PolyRing S(R.K, names);
  PolyList gs;
  for (auto& g : gb) gs.push_back(mp_rename(R, g, S));
  gs = groebner(S, gs);
  if (krull_dimension(S, gs) == 0) {
    PolyList all = gs;
    for (int x = 0; x < S.n(); ++x) {
      std::vector<int> others;
      for (int y = 0; y < S.n(); ++y)
        if (y != x) others.push_back(y);
      for (auto& f : eliminate(S, gs, others)) {
        if (support_vars(S, f).size() != 1) continue;
        EPoly p = to_univariate(S, f, x);
        all.push_back(from_univariate(S, squarefree_part(S.K, p), x));
      }
    }
    PolyList back;
    for (auto& g : groebner(S, all)) back.push_back(mp_rename(S, g, R));
    return {groebner(R, back), "zero-dimensional"};
  }
  throw Error(Error::Kind::Unsupported, "radical: unsupported ideal shape");
}

DiffIdeal radical(const DiffIdeal& I, std::string* shape) {
  DiffIdeal out = I;
  if (!I.D.has_d) {
    RadicalResult r = radical(I.D.R, I.gb);
    out.gb = r.gb;
    out.gens = r.gb;
    if (shape) *shape = r.shape;
  } else {
    DiffRing X = without_d(I.D);
    RadicalResult r = radical(X.R, contract_to_x(I));
    PolyList gens;
    for (auto& g : r.gb) gens.push_back(mp_rename(X.R, g, I.D.R));
    out = make_ideal(I.D, gens);
    if (shape) *shape = r.shape;
  }
  out.radical = true;
  out.delta_ok = I.delta_ok;
  return out;
}

// ---------- minimal primes ----------

namespace {

int theta_counter = 0;

void keep_minimal(const PolyRing& R, std::vector<PolyList>& ps) {
  std::vector<PolyList> out;
  for (size_t i = 0; i < ps.size(); ++i) {
    bool drop = false;
    for (size_t j = 0; j < ps.size() && !drop; ++j) {
      if (i == j) continue;
      if (!contains(R, ps[i], ps[j])) continue;
      bool same = contains(R, ps[j], ps[i]);
      if (!same || j < i) drop = true;
    }
    if (!drop) out.push_back(ps[i]);
  }
  ps = out;
}

std::vector<PolyList> primes_rec(const PolyRing& R, const PolyList& I);

std::vector<PolyList> principal_bivariate(const PolyRing& R, const MPoly& f, int u, int w) {
  Field Kt = Field::Qt();
  const Tower& T = *Kt.T;
  int du = f.degree_in(u), dw = f.degree_in(w);
  std::vector<EPoly> cw(dw + 1);
  for (auto& t : f.terms) {
    EPoly& p = cw[t.m.e[w]];
    if (p.size() <= t.m.e[u]) p.resize(t.m.e[u] + 1, T.zero(0));
    p[t.m.e[u]] = T.from_rat(0, t.c.q);
  }
  (void)du;
  EPoly content;
  EPoly fw;
  for (auto& p : cw) {
    T.ptrim(0, p);
    content = content.empty() ? p : (p.empty() ? content : T.pgcd(0, content, p));
  }
  for (auto& p : cw) fw.push_back(T.frac(1, p, content));
  T.ptrim(1, fw);
  auto lift = [&](const EPoly& g) {
    EPoly lcm{T.one(0)};
    for (auto& c : g)
      if (!T.is_zero(1, c)) lcm = T.pmul(0, lcm, T.pquo(0, c.den, T.pgcd(0, lcm, c.den)));
    std::vector<Term> ts;
    for (size_t j = 0; j < g.size(); ++j) {
      if (T.is_zero(1, g[j])) continue;
      EPoly num = T.pmul(0, g[j].num, T.pquo(0, lcm, g[j].den));
      for (size_t i = 0; i < num.size(); ++i) {
        if (num[i].q == 0) continue;
        Mono m;
        m.e[u] = static_cast<std::uint16_t>(i);
        m.e[w] = static_cast<std::uint16_t>(j);
        ts.push_back(Term{m, R.K.from_rat(num[i].q)});
      }
    }
    return mp_from_terms(R, ts);
  };
  std::vector<PolyList> out;
  for (const Factor& fa : factor(Kt, fw)) out.push_back(groebner(R, {lift(fa.f)}));
  if (content.size() > 1)
    for (const Factor& fa : factor(Field::Q(), content)) {
      EPoly g;
      for (auto& c : fa.f) g.push_back(c);
      std::vector<Term> ts;
      for (size_t i = 0; i < g.size(); ++i) {
        if (g[i].q == 0) continue;
        Mono m;
        m.e[u] = static_cast<std::uint16_t>(i);
        ts.push_back(Term{m, R.K.from_rat(g[i].q)});
      }
      out.push_back(groebner(R, {mp_from_terms(R, ts)}));
    }
  return out;
}

std::vector<PolyList> primes_rec(const PolyRing& R, const PolyList& I) {
  PolyList gb = groebner(R, I);
  if (is_unit_ideal(R, gb)) return {};
  if (gb.empty()) return {PolyList{}};
  size_t gi;
  int v;
  MPoly c, h;
  std::vector<PolyList> out;

  if (find_linear(R, gb, true, gi, v, c, h)) {
    MPoly img = mp_scale(R, h, R.K.neg(R.K.inv(c.terms[0].c)));
    for (auto& P : primes_rec(R, substitute_var(R, gb, gi, v, img))) {
      PolyList all = P;
      all.push_back(gb[gi]);
      out.push_back(groebner(R, all));
    }
    return out;
  }

  if (univariate_element(R, gb, gi, v)) {
    EPoly p = to_univariate(R, gb[gi], v);
    for (const Factor& fa : factor(R.K, p)) {
      if (fa.f.size() == 2) {
        MPoly img = mp_const(R, R.K.neg(fa.f[0]));
        for (auto& P : primes_rec(R, substitute_var(R, gb, gi, v, img))) {
          PolyList all = P;
          all.push_back(from_univariate(R, fa.f, v));
          out.push_back(groebner(R, all));
        }
        continue;
      }
      Field K2 = adjoin_root(R.K, "_th" + std::to_string(++theta_counter), fa.f);
      PolyRing R2 = R.with_field(K2);
      PolyList sub;
      std::vector<MPoly> imgs(R.n());
      for (int i = 0; i < R.n(); ++i) imgs[i] = i == v ? mp_const(R2, K2.gen(K2.L)) : mp_var(R2, i);
      for (size_t i = 0; i < gb.size(); ++i) {
        if (i == gi) continue;
        MPoly s = mp_substitute(R, gb[i], R2, imgs);
        if (!s.is_zero()) sub.push_back(s);
      }
      for (auto& P : primes_rec(R2, sub)) {
        PolyList all;
        for (auto& q : P) {
          MPoly lifted;
          for (auto& t : q.terms) {
            const Elem& e = t.c;
            for (size_t k = 0; k < e.num.size(); ++k) {
              if (R.K.is_zero(e.num[k])) continue;
              Mono m = t.m;
              m.e[v] = static_cast<std::uint16_t>(m.e[v] + k);
              lifted = mp_add(R, lifted, mp_from_terms(R, {Term{m, e.num[k]}}));
            }
          }
          all.push_back(lifted);
        }
        all.push_back(from_univariate(R, fa.f, v));
        out.push_back(groebner(R, all));
      }
    }
    keep_minimal(R, out);
    return out;
  }

  if (find_linear(R, gb, false, gi, v, c, h)) {
    PolyList J1 = saturate(R, gb, c);
    for (auto& P : primes_rec(R, eliminate(R, J1, {v}))) {
      PolyList all = P;
      all.push_back(gb[gi]);
      PolyList Q = saturate(R, all, c);
      if (!is_unit_ideal(R, Q)) out.push_back(Q);
    }
    PolyList J2 = gb;
    J2.push_back(c);
    for (auto& P : primes_rec(R, J2)) out.push_back(P);
    keep_minimal(R, out);
    return out;
  }

  if (gb.size() == 1 && R.K.L == 0) {
    std::vector<int> s = support_vars(R, gb[0]);
    if (s.size() == 2) {
      out = principal_bivariate(R, gb[0], s[0], s[1]);
      keep_minimal(R, out);
      return out;
    }
  }
  throw Error(Error::Kind::Unsupported, "prime decomposition: unsupported ideal shape");
}

}  // namespace

std::vector<PolyList> minimal_primes(const PolyRing& R, const PolyList& I) {
  std::vector<PolyList> out = primes_rec(R, I);
  keep_minimal(R, out);
  return out;
}

GroupIdeal identity_component(const GroupIdeal& H, int* components) {
  std::vector<PolyList> ps = minimal_primes(H.G, H.gb);
  if (components) *components = static_cast<int>(ps.size());
  const Field& C = H.G.K;
  int n = H.n;
  std::vector<Elem> id;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) id.push_back(C.from_int(i == j ? 1 : 0));
  id.push_back(C.one());
  for (auto& P : ps) {
    bool at_one = true;
    for (auto& f : P)
      if (!C.is_zero(mp_eval(H.G, f, id))) { at_one = false; break; }
    if (at_one) {
      GroupIdeal out = H;
      out.gb = P;
      return out;
    }
  }
  throw Error(Error::Kind::Verify, "no component through the identity");
}

std::vector<DiffIdeal> prime_decompose_torsor(const DiffIdeal& I, const Mat& alpha, const GroupIdeal& H, int* q1) {
  const DiffRing& D = I.D;
  if (!D.has_d) throw Error(Error::Kind::Domain, "torsor decomposition needs the inverse determinant");
  const PolyRing& R = D.R;
  const Field& K = R.K;
  int n = D.n;
  Mat ainv;
  if (!inverse(K, alpha, ainv)) throw Error(Error::Kind::Domain, "alpha is singular");
  Elem deta = determinant(K, alpha);
  std::vector<MPoly> img(H.G.n());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MPoly s;
      for (int k = 0; k < n; ++k)
        if (!K.is_zero(ainv[i][k])) s = mp_add(R, s, mp_scale(R, mp_var(R, xindex(n, k, j)), ainv[i][k]));
      img[xindex(n, i, j)] = s;
    }
  img[n * n] = mp_scale(R, mp_var(R, n * n), deta);
  PolyRing Gk = H.G;
  std::vector<PolyList> comps = minimal_primes(H.G, H.gb);
  const Field& C = H.G.K;
  std::vector<Elem> id;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) id.push_back(C.from_int(i == j ? 1 : 0));
  id.push_back(C.one());
  std::vector<DiffIdeal> out;
  if (q1) *q1 = -1;
  for (auto& P : comps) {
    PolyList gens;
    for (auto& f : P) gens.push_back(mp_substitute(Gk, f, R, img));
    DiffIdeal Q = make_ideal(D, gens);
    Q.prime = Q.radical = true;
    bool at_one = true;
    for (auto& f : P)
      if (!C.is_zero(mp_eval(H.G, f, id))) { at_one = false; break; }
    if (at_one && q1 && *q1 < 0) *q1 = static_cast<int>(out.size());
    out.push_back(std::move(Q));
  }
  return out;
}

std::string ideal_str(const PolyRing& R, const PolyList& gb, const std::string& indent) {
  std::ostringstream os;
  if (gb.empty()) os << indent << "0\n";
  for (auto& g : gb) os << indent << mp_str(R, g) << "\n";
  return os.str();
}

}  // namespace pvforge
