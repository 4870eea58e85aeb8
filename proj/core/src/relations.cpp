#include "pvforge/relations.hpp"

#include "pvforge/series.hpp"

#include <algorithm>
#include <map>

namespace pvforge {

namespace {

using Key = std::vector<std::uint16_t>;

mpz_class to_mpz(u64 v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

Key mono_key(const Mono& m, int n) { return Key(m.e.begin(), m.e.begin() + n); }

void require_qt(const Field& K) {
  if (K.L != 1 || K.top().kind != LevelKind::Transcendental)
    throw Error(Error::Kind::Unsupported, "relation search needs coefficients in Q(t)");
}

mpq_class peval_q(const EPoly& p, const mpq_class& x) {
  mpq_class r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i].q;
  return r;
}

// (t - t0)^e as a polynomial over Q.
EPoly shifted_power(const Tower& T, const mpq_class& t0, int e) {
  EPoly r{T.one(0)};
  EPoly lin{T.from_rat(0, -t0), T.one(0)};
  for (int i = 0; i < e; ++i) r = T.pmul(0, r, lin);
  return r;
}

// Polynomial coefficients on S of a polynomial whose support lies in S.
Vec coords(const Field& K, const MPoly& p, const std::map<Key, int>& idx, int n) {
  Vec v(idx.size(), K.zero());
  for (auto& t : p.terms) {
    auto it = idx.find(mono_key(t.m, n));
    if (it == idx.end()) throw Error(Error::Kind::Domain, "normal form left the monomial basis");
    v[it->second] = t.c;
  }
  return v;
}

Mat connection_on(const DiffRing& D, const PolyList& G, const std::vector<Mono>& S) {
  const PolyRing& R = D.R;
  int nv = R.n();
  std::map<Key, int> idx;
  for (size_t i = 0; i < S.size(); ++i) idx[mono_key(S[i], nv)] = static_cast<int>(i);
  Mat B;
  for (auto& s : S) {
    MPoly m = mp_from_terms(R, {Term{s, R.K.one()}});
    B.push_back(coords(R.K, normal_form(R, delta(D, m), G), idx, nv));
  }
  return B;
}

// Clears denominators and content of a vector over Q(t).
Vec primitive(const Field& K, const Vec& v) {
  const Tower& T = *K.T;
  EPoly l{T.one(0)};
  for (auto& a : v)
    if (!K.is_zero(a)) l = T.pmul(0, l, T.pquo(0, a.den, T.pgcd(0, l, a.den)));
  Vec out;
  EPoly g;
  for (auto& a : v) {
    EPoly p = K.is_zero(a) ? EPoly{} : T.pmul(0, a.num, T.pquo(0, l, a.den));
    if (!p.empty()) g = g.empty() ? p : T.pgcd(0, g, p);
    out.push_back(p.empty() ? K.zero() : T.frac(1, p, EPoly{T.one(0)}));
  }
  if (g.size() > 1)
    for (auto& a : out)
      if (!K.is_zero(a)) a = T.frac(1, T.pquo(0, a.num, g), EPoly{T.one(0)});
  return out;
}

struct ModKernel {
  bool empty = true;
  Mat vectors;  // over Q(t), length |S|
  int primes = 0;
};

ModKernel modular_kernel(const Field& K, const Mat& A, const std::vector<Mono>& S, int nvars, int n,
                         const mpq_class& t0, int D, int N, int max_primes) {
  const Tower& T = *K.T;
  int ns = static_cast<int>(S.size());
  int cols = ns * (D + 1);
  std::map<Key, int> idx;
  for (int i = 0; i < ns; ++i) idx[mono_key(S[i], nvars)] = i;

  ModKernel out;
  std::vector<int> free_ref;
  std::vector<std::vector<mpz_class>> acc;
  mpz_class modulus = 1;
  std::vector<std::vector<mpq_class>> last;
  bool have_last = false;
  int used = 0;
  for (int pi = 0; pi < 4 * max_primes && used < max_primes; ++pi) {
    ModP F{nth_prime62(pi)};
    std::vector<std::vector<SeriesP>> Fs;
    if (!fundamental_series_modp(K, A, t0, N, F, Fs)) continue;
    ++used;
    std::vector<SeriesP> ser(ns);
    for (int i = 0; i < ns; ++i) {
      const Mono& s = S[i];
      int v = -1;
      for (int x = 0; x < nvars; ++x)
        if (s.e[x]) { v = x; break; }
      if (v < 0) {
        ser[i].assign(N, 0);
        ser[i][0] = 1;
        continue;
      }
      Mono par = s;
      par.e[v] -= 1;
      auto it = idx.find(mono_key(par, nvars));
      if (it == idx.end()) throw Error(Error::Kind::Domain, "standard monomials are not closed under division");
      ser[i] = series_mul_modp(F, ser[it->second], Fs[v / n][v % n], N);
    }
    MatP M(N, std::vector<u64>(cols, 0));
    for (int i = 0; i < ns; ++i)
      for (int e = 0; e <= D; ++e)
        for (int k = e; k < N; ++k) M[k][i * (D + 1) + e] = ser[i][k - e];
    std::vector<int> fr;
    MatP ker = kernel_modp(F, std::move(M), &fr);
    out.primes = used;
    if (ker.empty()) {
      out.empty = true;
      return out;
    }
    if (acc.empty() || fr.size() < free_ref.size()) {
      free_ref = fr;
      acc.assign(ker.size(), std::vector<mpz_class>(cols));
      for (size_t r = 0; r < ker.size(); ++r)
        for (int c = 0; c < cols; ++c) acc[r][c] = to_mpz(ker[r][c]);
      modulus = to_mpz(F.p);
      have_last = false;
    } else if (fr != free_ref) {
      continue;
    } else {
      mpz_class p = to_mpz(F.p);
      mpz_class inv;
      mpz_class mm = modulus % p;
      mpz_invert(inv.get_mpz_t(), mm.get_mpz_t(), p.get_mpz_t());
      for (size_t r = 0; r < ker.size(); ++r)
        for (int c = 0; c < cols; ++c) {
          mpz_class a = acc[r][c];
          mpz_class diff = (to_mpz(ker[r][c]) - a % p) % p;
          if (diff < 0) diff += p;
          mpz_class k = (diff * inv) % p;
          acc[r][c] = a + modulus * k;
        }
      modulus *= p;
    }
    std::vector<std::vector<mpq_class>> rec(acc.size(), std::vector<mpq_class>(cols));
    bool ok = true;
    for (size_t r = 0; r < acc.size() && ok; ++r)
      for (int c = 0; c < cols && ok; ++c) ok = rational_reconstruct(acc[r][c], modulus, rec[r][c]);
    if (ok && have_last && rec == last) {
      out.empty = false;
      for (auto& row : rec) {
        Vec v(ns, K.zero());
        for (int i = 0; i < ns; ++i) {
          EPoly p;
          for (int e = 0; e <= D; ++e)
            if (row[i * (D + 1) + e] != 0) p = T.padd(0, p, T.pscale(0, shifted_power(T, t0, e), T.from_rat(0, row[i * (D + 1) + e])));
          if (!p.empty()) v[i] = T.frac(1, p, EPoly{T.one(0)});
        }
        out.vectors.push_back(v);
      }
      return out;
    }
    if (ok) {
      last = rec;
      have_last = true;
    }
  }
  throw Error(Error::Kind::Bound, "rational reconstruction did not stabilize");
}

}  // namespace

bool value_at(const Elem& a, const mpq_class& t0, mpq_class& out) {
  mpq_class d = peval_q(a.den, t0);
  if (d == 0) return false;
  out = peval_q(a.num, t0) / d;
  return true;
}

mpq_class default_point(const Field& K, const Mat& A) {
  require_qt(K);
  for (long p = 0;; ++p) {
    bool ok = true;
    mpq_class v;
    for (auto& row : A)
      for (auto& a : row)
        if (!value_at(a, mpq_class(p), v)) ok = false;
    if (ok) return mpq_class(p);
  }
}

Mat prolong(const DiffRing& D, int nu, std::vector<Mono>& monos) {
  monos = monomials_up_to(D.R.n(), nu);
  std::sort(monos.begin(), monos.end(), [&](const Mono& a, const Mono& b) {
    int da = a.deg(D.R.n()), db = b.deg(D.R.n());
    if (da != db) return da < db;
    return std::lexicographical_compare(b.e.begin(), b.e.end(), a.e.begin(), a.e.end());
  });
  return connection_on(D, {}, monos);
}

Vec nabla(const Field& K, const Vec& c, const Mat& B) {
  Vec out(c.size(), K.zero());
  for (size_t s = 0; s < c.size(); ++s) {
    out[s] = K.add(out[s], K.derive(c[s]));
    if (K.is_zero(c[s])) continue;
    for (size_t j = 0; j < c.size(); ++j)
      if (!K.is_zero(B[s][j])) out[j] = K.add(out[j], K.mul(B[s][j], c[s]));
  }
  return out;
}

Mat stability_refine(const Field& K, const Mat& rows0, const Mat& B) {
  Mat rows = rows0;
  if (rows.empty()) return rows;
  rows.resize(rref(K, rows).size());
  for (;;) {
    if (rows.empty()) return rows;
    Mat ann = kernel(K, rows);
    if (ann.empty()) return rows;
    std::vector<Vec> nb;
    for (auto& r : rows) nb.push_back(nabla(K, r, B));
    Mat C(ann.size(), Vec(rows.size(), K.zero()));
    for (size_t j = 0; j < ann.size(); ++j)
      for (size_t i = 0; i < rows.size(); ++i) {
        Elem s = K.zero();
        for (size_t k = 0; k < ann[j].size(); ++k)
          if (!K.is_zero(ann[j][k]) && !K.is_zero(nb[i][k])) s = K.add(s, K.mul(ann[j][k], nb[i][k]));
        C[j][i] = s;
      }
    Mat lam = kernel(K, C);
    if (lam.size() == rows.size()) return rows;
    Mat next;
    for (auto& l : lam) {
      Vec v(rows[0].size(), K.zero());
      for (size_t i = 0; i < rows.size(); ++i)
        if (!K.is_zero(l[i]))
          for (size_t k = 0; k < v.size(); ++k) v[k] = K.add(v[k], K.mul(l[i], rows[i][k]));
      next.push_back(v);
    }
    if (!next.empty()) next.resize(rref(K, next).size());
    rows = next;
  }
}

bool stability_certificate(const Field& K, const Mat& rows, const Mat& B, const mpq_class& t0,
                           const std::vector<mpq_class>& at_identity) {
  if (rows.empty()) return true;
  Mat cols = mat_transpose(rows);
  for (auto& r : rows) {
    mpq_class acc = 0;
    for (size_t k = 0; k < r.size(); ++k) {
      if (K.is_zero(r[k]) || at_identity[k] == 0) continue;
      mpq_class v;
      if (!value_at(r[k], t0, v)) return false;
      acc += v * at_identity[k];
    }
    if (acc != 0) return false;
    for (auto& a : r) {
      mpq_class v;
      if (!value_at(a, t0, v)) return false;
    }
    Vec mu;
    if (!solve(K, cols, nabla(K, r, B), mu)) return false;
    for (auto& m : mu) {
      mpq_class v;
      if (!value_at(m, t0, v)) return false;
    }
  }
  return true;
}

bool ideal_certificate(const DiffRing& D, const PolyList& gb, const mpq_class& t0) {
  const PolyRing& R = D.R;
  int n = D.n;
  std::vector<mpq_class> id;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) id.push_back(i == j ? 1 : 0);
  for (auto& g : gb) {
    mpq_class acc = 0;
    for (auto& t : g.terms) {
      mpq_class v;
      if (!value_at(t.c, t0, v)) return false;
      mpq_class m = 1;
      for (int x = 0; x < n * n && m != 0; ++x)
        if (t.m.e[x] && id[x] == 0) m = 0;
      acc += v * m;
    }
    if (acc != 0) return false;
    PolyList h;
    if (!normal_form_cofactors(R, delta(D, g), gb, h).is_zero()) return false;
    for (auto& c : h)
      for (auto& t : c.terms) {
        mpq_class v;
        if (!value_at(t.c, t0, v)) return false;
      }
  }
  return true;
}

RelationResult relation_space(const Field& K, const Mat& A, const RelationConfig& cfg) {
  require_qt(K);
  RelationResult res;
  res.D = diff_ring(K, A, false);
  const DiffRing& D = res.D;
  const PolyRing& R = D.R;
  int n = D.n, nv = R.n();
  res.t0 = cfg.point ? *cfg.point : default_point(K, A);
  {
    mpq_class v;
    for (auto& row : A)
      for (auto& a : row)
        if (!value_at(a, res.t0, v)) throw Error(Error::Kind::Domain, "expansion point is a singularity of A");
  }
  PolyList G;
  res.certified = true;
  for (int nu = 1; nu <= cfg.degree; ++nu) {
    std::vector<Mono> S = standard_monomials(R, G, nu);
    LevelReport rep;
    rep.nu = nu;
    rep.standard = static_cast<int>(S.size());
    rep.unknowns = rep.standard * (cfg.coeff_degree + 1);
    int N = cfg.order > 0 ? cfg.order : 2 * rep.unknowns + 8;
    std::vector<mpq_class> at_id(S.size());
    for (size_t i = 0; i < S.size(); ++i) {
      at_id[i] = 1;
      for (int x = 0; x < nv; ++x)
        if (S[i].e[x] && (x / n != x % n)) at_id[i] = 0;
    }
    Mat B = connection_on(D, G, S);
    Mat found;
    for (int esc = 0;; ++esc) {
      rep.N = N;
      ModKernel mk = modular_kernel(K, A, S, nv, n, res.t0, cfg.coeff_degree, N, cfg.max_primes);
      rep.primes = mk.primes;
      if (mk.empty) {
        rep.kernel = rep.found = 0;
        rep.certified = true;
        found.clear();
        break;
      }
      Mat k0 = mk.vectors;
      k0.resize(rref(K, k0).size());
      rep.kernel = static_cast<int>(k0.size());
      found = stability_refine(K, k0, B);
      rep.found = static_cast<int>(found.size());
      bool cert = stability_certificate(K, found, B, res.t0, at_id);
      if (!cert) {
        Mat prim;
        for (auto& r : found) prim.push_back(primitive(K, r));
        cert = stability_certificate(K, prim, B, res.t0, at_id);
      }
      rep.certified = cert;
      bool retry = !cert || (found.empty() && !k0.empty());
      if (!retry || esc >= cfg.max_escalations) break;
      N *= 2;
    }
    if (!rep.certified) res.certified = false;
    if (!found.empty()) {
      PolyList all = G;
      for (auto& r : found) {
        Vec p = primitive(K, r);
        std::vector<Term> ts;
        for (size_t i = 0; i < S.size(); ++i)
          if (!K.is_zero(p[i])) ts.push_back(Term{S[i], p[i]});
        all.push_back(mp_from_terms(R, ts));
      }
      G = groebner(R, all);
    }
    res.levels.push_back(rep);
  }
  res.gb = G;
  for (auto& mu : monomials_up_to(nv, cfg.degree)) {
    MPoly m = mp_from_terms(R, {Term{mu, K.one()}});
    MPoly r = normal_form(R, m, G);
    if (mp_eq(R, r, m)) continue;
    res.basis.push_back(mp_sub(R, m, r));
  }
  if (!G.empty() && !ideal_certificate(D, G, res.t0)) {
    PolyList prim;
    for (auto& g : G) {
      Vec c;
      for (auto& t : g.terms) c.push_back(t.c);
      Vec p = primitive(K, c);
      std::vector<Term> ts;
      for (size_t i = 0; i < g.terms.size(); ++i) ts.push_back(Term{g.terms[i].m, p[i]});
      prim.push_back(mp_from_terms(R, ts));
    }
    if (!ideal_certificate(D, prim, res.t0)) res.certified = false;
  }
  return res;
}

}  // namespace pvforge
