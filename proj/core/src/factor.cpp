#include "pvforge/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>

namespace pvforge {

namespace {

using u64 = std::uint64_t;
using NPoly = std::vector<u64>;  // mod p, lowest first

// ---------- arithmetic mod a word-size prime ----------

struct Zp {
  u64 p;
  u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
  u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 pw(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pw(a, p - 2); }

  void trim(NPoly& a) const { while (!a.empty() && a.back() == 0) a.pop_back(); }
  NPoly mulp(const NPoly& a, const NPoly& b) const {
    if (a.empty() || b.empty()) return {};
    NPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
    trim(r);
    return r;
  }
  NPoly subp(const NPoly& a, const NPoly& b) const {
    NPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
  }
  NPoly addp(const NPoly& a, const NPoly& b) const {
    NPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
  }
  void divrem(const NPoly& a, const NPoly& b, NPoly& q, NPoly& r) const {
    r = a;
    trim(r);
    q.clear();
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, 0);
    u64 il = inv(b.back());
    for (size_t k = r.size(); k-- >= b.size();) {
      u64 c = mul(r[k], il);
      size_t s = k - (b.size() - 1);
      q[s] = c;
      if (c)
        for (size_t j = 0; j < b.size(); ++j) r[s + j] = sub(r[s + j], mul(c, b[j]));
    }
    trim(q);
    trim(r);
  }
  NPoly rem(const NPoly& a, const NPoly& b) const { NPoly q, r; divrem(a, b, q, r); return r; }
  NPoly quo(const NPoly& a, const NPoly& b) const { NPoly q, r; divrem(a, b, q, r); return q; }
  NPoly monic(const NPoly& a) const {
    if (a.empty()) return a;
    u64 il = inv(a.back());
    NPoly r = a;
    for (auto& c : r) c = mul(c, il);
    return r;
  }
  NPoly gcd(NPoly a, NPoly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      NPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  NPoly xgcd(const NPoly& a, const NPoly& b, NPoly& s, NPoly& t) const {
    NPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
      NPoly q, r;
      divrem(r0, r1, q, r);
      NPoly s2 = subp(s0, mulp(q, s1)), t2 = subp(t0, mulp(q, t1));
      r0 = r1; r1 = r; s0 = s1; s1 = s2; t0 = t1; t1 = t2;
    }
    u64 il = inv(r0.back());
    for (auto& c : s0) c = mul(c, il);
    for (auto& c : t0) c = mul(c, il);
    s = s0;
    t = t0;
    return monic(r0);
  }
  NPoly powmod(NPoly base, mpz_class e, const NPoly& m) const {
    NPoly r{1};
    base = rem(base, m);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = rem(mulp(r, base), m);
      e >>= 1;
      if (e > 0) base = rem(mulp(base, base), m);
    }
    return r;
  }
  NPoly deriv(const NPoly& a) const {
    NPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(mul(a[i], i % p));
    trim(r);
    return r;
  }
};

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 mod_of(const mpz_class& a, u64 p) {
  mpz_class r;
  mpz_class pp(static_cast<unsigned long>(p));
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), pp.get_mpz_t());
  return r.get_ui();
}

NPoly reduce(const ZPoly& f, const Zp& F) {
  NPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = mod_of(f[i], F.p);
  F.trim(r);
  return r;
}

// Cantor–Zassenhaus: monic squarefree f into monic irreducibles.
std::vector<NPoly> factor_modp(const NPoly& f, const Zp& F, std::mt19937_64& rng) {
  std::vector<NPoly> out;
  // distinct degree
  std::vector<std::pair<NPoly, int>> dd;
  NPoly g = f, h{0, 1};
  NPoly x{0, 1};
  for (int d = 1; 2 * d <= static_cast<int>(g.size()) - 1; ++d) {
    h = F.powmod(h, mpz_class(static_cast<unsigned long>(F.p)), g);
    NPoly c = F.gcd(g, F.subp(h, x));
    if (c.size() > 1) {
      dd.push_back({c, d});
      g = F.quo(g, c);
      h = F.rem(h, g);
    }
  }
  if (g.size() > 1) dd.push_back({g, static_cast<int>(g.size()) - 1});
  // equal degree
  std::function<void(const NPoly&, int)> split = [&](const NPoly& u, int d) {
    int n = static_cast<int>(u.size()) - 1;
    if (n == d) {
      out.push_back(u);
      return;
    }
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), F.p, d);
    e = (e - 1) / 2;
    while (true) {
      NPoly a(n);
      for (auto& c : a) c = rng() % F.p;
      F.trim(a);
      if (a.size() < 2) continue;
      NPoly b = F.powmod(a, e, u);
      NPoly c = F.gcd(u, F.subp(b, NPoly{1}));
      if (c.size() > 1 && c.size() < u.size()) {
        split(c, d);
        split(F.quo(u, c), d);
        return;
      }
    }
  };
  for (auto& [u, d] : dd) split(u, d);
  return out;
}

// ---------- integer polynomials ----------

void ztrim(ZPoly& a) { while (!a.empty() && a.back() == 0) a.pop_back(); }

mpz_class zcontent(const ZPoly& a) {
  mpz_class g = 0;
  for (auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly zprimitive(ZPoly a) {
  ztrim(a);
  if (a.empty()) return a;
  mpz_class g = zcontent(a);
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

// Exact division over Z; returns false if b does not divide a.
bool zdivides(const ZPoly& a, const ZPoly& b, ZPoly& q) {
  ZPoly r = a;
  ztrim(r);
  q.clear();
  if (r.size() < b.size()) return r.empty();
  q.assign(r.size() - b.size() + 1, 0);
  for (size_t k = r.size(); k-- >= b.size();) {
    if (r[k] == 0) continue;
    if (!mpz_divisible_p(r[k].get_mpz_t(), b.back().get_mpz_t())) return false;
    mpz_class c = r[k] / b.back();
    size_t s = k - (b.size() - 1);
    q[s] = c;
    for (size_t j = 0; j < b.size(); ++j) r[s + j] -= c * b[j];
  }
  ztrim(r);
  ztrim(q);
  return r.empty();
}

ZPoly zsymmetric(const ZPoly& a, const mpz_class& m) {
  ZPoly r(a.size());
  mpz_class h = m / 2;
  for (size_t i = 0; i < a.size(); ++i) {
    mpz_class c;
    mpz_mod(c.get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
    if (c > h) c -= m;
    r[i] = c;
  }
  ztrim(r);
  return r;
}

ZPoly zmulmod(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly r = zmul(a, b);
  for (auto& c : r) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  ztrim(r);
  return r;
}

ZPoly lift_np(const NPoly& a) {
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

// Linear multifactor Hensel lifting of monic factors of lc^{-1} f from p to p^k.
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<NPoly>& g, const Zp& F, int k) {
  size_t r = g.size();
  // cofactors c_i with Σ c_i ∏_{j≠i} g_j = 1 mod p
  std::vector<NPoly> c(r);
  {
    std::vector<NPoly> prod(r);
    for (size_t i = 0; i < r; ++i) {
      NPoly pr{1};
      for (size_t j = 0; j < r; ++j)
        if (j != i) pr = F.mulp(pr, g[j]);
      prod[i] = pr;
    }
    // incremental Bezout via partial fractions: c_i = (prod_i)^{-1} mod g_i
    for (size_t i = 0; i < r; ++i) {
      NPoly s, t;
      F.xgcd(F.rem(prod[i], g[i]), g[i], s, t);
      c[i] = s;
    }
  }
  mpz_class p(static_cast<unsigned long>(F.p));
  mpz_class pk = p;
  mpz_class lc = f.back();
  // monic target: lc^{-1} f mod p^k, refined each step
  std::vector<ZPoly> G(r);
  for (size_t i = 0; i < r; ++i) G[i] = lift_np(g[i]);
  for (int step = 1; step < k; ++step) {
    mpz_class mod = pk * p;
    mpz_class ilc;
    mpz_invert(ilc.get_mpz_t(), lc.get_mpz_t(), mod.get_mpz_t());
    ZPoly target(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
      target[i] = f[i] * ilc;
      mpz_mod(target[i].get_mpz_t(), target[i].get_mpz_t(), mod.get_mpz_t());
    }
    ZPoly prod{1};
    for (auto& gi : G) prod = zmulmod(prod, gi, mod);
    ZPoly e(std::max(target.size(), prod.size()), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      mpz_class v = (i < target.size() ? target[i] : mpz_class(0)) - (i < prod.size() ? prod[i] : mpz_class(0));
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
      e[i] = v / pk;
    }
    ztrim(e);
    NPoly en = reduce(e, F);
    if (en.empty()) {
      pk = mod;
      continue;
    }
    for (size_t i = 0; i < r; ++i) {
      NPoly d = F.rem(F.mulp(en, c[i]), g[i]);
      ZPoly dz = lift_np(d);
      G[i].resize(std::max(G[i].size(), dz.size()), 0);
      for (size_t j = 0; j < dz.size(); ++j) G[i][j] += dz[j] * pk;
    }
    pk = mod;
  }
  return G;
}

void subsets_rec(int n, int k, int start, std::vector<int>& cur, const std::function<bool(const std::vector<int>&)>& cb, bool& stop) {
  if (stop) return;
  if (static_cast<int>(cur.size()) == k) {
    if (cb(cur)) stop = true;
    return;
  }
  for (int i = start; i < n && !stop; ++i) {
    cur.push_back(i);
    subsets_rec(n, k, i + 1, cur, cb, stop);
    cur.pop_back();
  }
}

// ---------- rational univariate helpers over Q via the tower ----------

const TowerPtr& QT() {
  static TowerPtr q = Tower::rationals();
  return q;
}

EPoly q_from_z(const ZPoly& a) {
  EPoly r;
  for (auto& c : a) r.push_back(QT()->from_rat(0, mpq_class(c)));
  QT()->ptrim(0, r);
  return r;
}

ZPoly z_from_q(const EPoly& a) {
  mpz_class l = 1;
  for (auto& c : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.q.get_den_mpz_t());
  ZPoly r;
  for (auto& c : a) r.push_back(mpz_class(c.q * l));
  return zprimitive(r);
}

bool sort_key_less(const Field& K, const EPoly& a, const EPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = a.size(); i-- > 0;) {
    int c = K.cmp(a[i], b[i]);
    if (c) return c < 0;
  }
  return false;
}

// ---------- bivariate over Q(t) ----------

// f: coefficients in x, each an EPoly over Q in the variable (level 0).
using BPoly = std::vector<EPoly>;

int tdeg(const BPoly& f) {
  int d = 0;
  for (auto& c : f) d = std::max(d, static_cast<int>(c.size()) - 1);
  return d;
}

EPoly s_trunc(EPoly a, size_t K) {
  if (a.size() > K) a.resize(K);
  QT()->ptrim(0, a);
  return a;
}

EPoly s_mul(const EPoly& a, const EPoly& b, size_t K) {
  const Tower& T = *QT();
  if (a.empty() || b.empty()) return {};
  size_t n = std::min(K, a.size() + b.size() - 1);
  EPoly r(n, T.zero(0));
  for (size_t i = 0; i < a.size() && i < n; ++i)
    for (size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j].q += a[i].q * b[j].q;
  T.ptrim(0, r);
  return r;
}

EPoly s_inv(const EPoly& a, size_t K) {
  EPoly r(K, QT()->zero(0));
  mpq_class i0 = 1 / a[0].q;
  for (size_t n = 0; n < K; ++n) {
    mpq_class s = n == 0 ? mpq_class(1) : mpq_class(0);
    for (size_t j = 1; j <= n && j < a.size(); ++j) s -= a[j].q * r[n - j].q;
    r[n].q = s * i0;
  }
  QT()->ptrim(0, r);
  return r;
}

// polynomial in x with series coefficients
using SPoly = std::vector<EPoly>;

SPoly sp_mul(const SPoly& a, const SPoly& b, size_t K) {
  if (a.empty() || b.empty()) return {};
  SPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = QT()->padd(0, r[i + j], s_mul(a[i], b[j], K));
  return r;
}

std::vector<BPoly> factor_bivariate_sqfree(const BPoly& f0) {
  const Tower& T = *QT();
  BPoly f = f0;
  int nx = static_cast<int>(f.size()) - 1;
  if (nx <= 1) return {f};
  int dt = tdeg(f);
  if (dt == 0) {
    EPoly u;
    for (auto& c : f) u.push_back(c.empty() ? T.zero(0) : c[0]);
    auto fs = factor_squarefree_z(z_from_q(u));
    std::vector<BPoly> out;
    for (auto& g : fs) {
      BPoly b;
      for (auto& c : g) b.push_back(c == 0 ? EPoly{} : EPoly{T.from_rat(0, mpq_class(c))});
      out.push_back(b);
    }
    return out;
  }
  // choose a specialization point
  long t0 = 0;
  EPoly u;
  for (int attempt = 0;; ++attempt) {
    t0 = (attempt % 2 == 0) ? attempt / 2 : -(attempt + 1) / 2;
    Elem tv = T.from_rat(0, mpq_class(t0));
    u.clear();
    for (auto& c : f) u.push_back(T.peval(0, c, tv));
    T.ptrim(0, u);
    if (static_cast<int>(u.size()) - 1 != nx) continue;
    if (T.pgcd(0, u, T.pdiff(0, u)).size() != 1) continue;
    break;
  }
  auto ufz = factor_squarefree_z(z_from_q(u));
  if (ufz.size() == 1) return {f};
  std::vector<EPoly> g;
  for (auto& z : ufz) g.push_back(T.pmonic(0, q_from_z(z)));
  size_t K = static_cast<size_t>(dt) + 1;
  // shift t = s + t0
  EPoly shift{T.from_rat(0, mpq_class(t0)), T.one(0)};
  SPoly F;
  for (auto& c : f) F.push_back(s_trunc(T.pcompose(0, c, shift), K));
  EPoly lc = F.back();
  EPoly ilc = s_inv(lc, K);
  SPoly Fm;
  for (auto& c : F) Fm.push_back(s_mul(c, ilc, K));
  size_t r = g.size();
  std::vector<EPoly> cof(r);
  for (size_t i = 0; i < r; ++i) {
    EPoly pr{T.one(0)};
    for (size_t j = 0; j < r; ++j)
      if (j != i) pr = T.pmul(0, pr, g[j]);
    EPoly s, t;
    T.pxgcd(0, T.prem(0, pr, g[i]), g[i], s, t);
    cof[i] = s;
  }
  std::vector<SPoly> G(r);
  for (size_t i = 0; i < r; ++i)
    for (auto& c : g[i]) G[i].push_back(c.q == 0 ? EPoly{} : EPoly{c});
  for (size_t k = 1; k < K; ++k) {
    SPoly P{EPoly{T.one(0)}};
    for (auto& Gi : G) P = sp_mul(P, Gi, k + 1);
    EPoly e;
    for (size_t i = 0; i < std::max(P.size(), Fm.size()); ++i) {
      mpq_class a = 0;
      if (i < Fm.size() && Fm[i].size() > k) a += Fm[i][k].q;
      if (i < P.size() && P[i].size() > k) a -= P[i][k].q;
      e.push_back(T.from_rat(0, a));
    }
    T.ptrim(0, e);
    if (e.empty()) continue;
    for (size_t i = 0; i < r; ++i) {
      EPoly d = T.prem(0, T.pmul(0, e, cof[i]), g[i]);
      if (G[i].size() < d.size()) G[i].resize(d.size());
      for (size_t j = 0; j < d.size(); ++j) {
        EPoly& c = G[i][j];
        if (c.size() <= k) c.resize(k + 1, T.zero(0));
        c[k].q += d[j].q;
        T.ptrim(0, c);
      }
    }
  }
  // recombination
  std::vector<BPoly> out;
  std::vector<int> alive(r);
  for (size_t i = 0; i < r; ++i) alive[i] = static_cast<int>(i);
  EPoly unshift{T.from_rat(0, mpq_class(-t0)), T.one(0)};
  Field Kt = Field::Qt();
  const Tower& TT = *Kt.T;
  auto to_kt = [&](const BPoly& b) {
    EPoly r2;
    for (auto& c : b) {
      Elem e = TT.zero(1);
      e.num = c;
      e.den = {TT.one(0)};
      TT.ptrim(0, e.num);
      r2.push_back(e);
    }
    TT.ptrim(1, r2);
    return r2;
  };
  BPoly rest = f;
  for (int sz = 1; 2 * sz <= static_cast<int>(alive.size());) {
    bool found = false;
    std::vector<int> cur;
    bool stop = false;
    std::vector<int> hit;
    BPoly hitpoly;
    subsets_rec(static_cast<int>(alive.size()), sz, 0, cur, [&](const std::vector<int>& S) {
      SPoly P{EPoly{T.one(0)}};
      for (int i : S) P = sp_mul(P, G[alive[i]], K);
      EPoly lcr = s_trunc(T.pcompose(0, rest.back(), shift), K);
      BPoly cand;
      for (auto& c : P) cand.push_back(T.pcompose(0, s_mul(c, lcr, K), unshift));
      // primitive part in x over Q[t]
      EPoly cont;
      for (auto& c : cand) cont = T.pgcd(0, cont, c);
      if (cont.size() > 1)
        for (auto& c : cand) c = T.pquo(0, c, cont);
      EPoly a = to_kt(rest), b = to_kt(cand);
      if (b.size() < 2) return false;
      EPoly q, rr;
      TT.pdivrem(1, a, b, q, rr);
      if (!rr.empty()) return false;
      hit = S;
      hitpoly = cand;
      return true;
    }, stop);
    if (stop) {
      found = true;
      out.push_back(hitpoly);
      // divide rest
      EPoly a = to_kt(rest), b = to_kt(hitpoly), q, rr;
      TT.pdivrem(1, a, b, q, rr);
      // clear denominators of q back into Q[t]
      EPoly l{T.one(0)};
      for (auto& c : q) l = T.pmul(0, l, T.pquo(0, c.den, T.pgcd(0, l, c.den)));
      BPoly nr;
      for (auto& c : q) nr.push_back(T.pmul(0, c.num, T.pquo(0, l, c.den)));
      rest = nr;
      std::vector<int> na;
      for (size_t i = 0; i < alive.size(); ++i)
        if (std::find(hit.begin(), hit.end(), static_cast<int>(i)) == hit.end()) na.push_back(alive[i]);
      alive = na;
    }
    if (!found) ++sz;
  }
  out.push_back(rest);
  return out;
}

// ---------- generic dispatch ----------

std::vector<EPoly> factor_sqfree(const Field& K, const EPoly& f);

std::vector<EPoly> factor_over_q(const EPoly& f) {
  auto zs = factor_squarefree_z(z_from_q(f));
  std::vector<EPoly> out;
  for (auto& z : zs) out.push_back(QT()->pmonic(0, q_from_z(z)));
  return out;
}

std::vector<EPoly> factor_over_qt(const Field& K, const EPoly& f) {
  const Tower& T = *K.T;
  // clear denominators into Q[t][x]
  EPoly l{T.one(0)};
  for (auto& c : f) l = T.pmul(0, l, T.pquo(0, c.den, T.pgcd(0, l, c.den)));
  BPoly b;
  for (auto& c : f) b.push_back(T.pmul(0, c.num, T.pquo(0, l, c.den)));
  EPoly cont;
  for (auto& c : b) cont = T.pgcd(0, cont, c);
  if (cont.size() > 1)
    for (auto& c : b) c = T.pquo(0, c, cont);
  auto fs = factor_bivariate_sqfree(b);
  std::vector<EPoly> out;
  for (auto& g : fs) {
    EPoly e;
    for (auto& c : g) {
      Elem x = T.zero(1);
      x.num = c;
      T.ptrim(0, x.num);
      e.push_back(x);
    }
    T.ptrim(1, e);
    if (e.size() > 1) out.push_back(T.pmonic(1, e));
  }
  return out;
}

// Bareiss determinant over (level M)[x].
EPoly det_poly(const Tower& T, int M, std::vector<std::vector<EPoly>> a) {
  size_t n = a.size();
  EPoly prev{T.one(M)};
  bool negate = false;
  for (size_t k = 0; k < n; ++k) {
    if (a[k][k].empty()) {
      size_t piv = k + 1;
      while (piv < n && a[piv][k].empty()) ++piv;
      if (piv == n) return {};
      std::swap(a[k], a[piv]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        EPoly v = T.psub(M, T.pmul(M, a[i][j], a[k][k]), T.pmul(M, a[i][k], a[k][j]));
        a[i][j] = T.pquo(M, v, prev);
      }
    prev = a[k][k];
  }
  EPoly d = a[n - 1][n - 1];
  if (negate)
    for (auto& c : d) c = T.neg(M, c);
  return d;
}

std::vector<EPoly> factor_over_alg(const Field& K, const EPoly& f) {
  const Tower& T = *K.T;
  int L = K.L, M = L - 1;
  Field base(K.T, M);
  Elem z = T.gen(L);
  for (long s = 0; s < 40; ++s) {
    // g(x) = f(x - s z)
    EPoly sh{T.neg(L, T.mul(L, T.from_rat(L, mpq_class(s)), z)), T.one(L)};
    EPoly g = T.pcompose(L, f, sh);
    EPoly N = norm_down(K, g);
    if (T.pgcd(M, N, T.pdiff(M, N)).size() != 1) continue;
    auto nf = factor_sqfree(base, N);
    std::vector<EPoly> out;
    EPoly back{T.mul(L, T.from_rat(L, mpq_class(s)), z), T.one(L)};
    for (auto& h : nf) {
      EPoly he;
      for (auto& c : h) he.push_back(T.embed(M, L, c));
      EPoly gg = T.pgcd(L, g, he);
      out.push_back(T.pmonic(L, T.pcompose(L, gg, back)));
    }
    return out;
  }
  throw Error(Error::Kind::Unsupported, "no squarefree norm found");
}

std::vector<EPoly> factor_sqfree(const Field& K, const EPoly& f) {
  if (f.size() <= 2) return {K.T->pmonic(K.L, f)};
  const Level& lv = K.top();
  if (K.L == 0) return factor_over_q(f);
  if (lv.kind == LevelKind::Transcendental) {
    if (K.L != 1) throw Error(Error::Kind::Unsupported, "factorization over K(t) with algebraic constants");
    return factor_over_qt(K, f);
  }
  return factor_over_alg(K, f);
}

}  // namespace

std::vector<ZPoly> factor_squarefree_z(const ZPoly& f0) {
  ZPoly f = zprimitive(f0);
  int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {f};
  // pull out factor x
  std::vector<ZPoly> out;
  size_t z = 0;
  while (z < f.size() && f[z] == 0) ++z;
  if (z > 0) {
    out.push_back({0, 1});
    f.erase(f.begin(), f.begin() + z);
    n = static_cast<int>(f.size()) - 1;
    if (n <= 1) {
      if (n == 1) out.push_back(f);
      return out;
    }
  }
  std::mt19937_64 rng(12345);
  // prime selection: fewest modular factors among several good primes
  Zp best{0};
  std::vector<NPoly> bestf;
  int tried = 0;
  for (u64 p = 3; tried < 5; p += 2) {
    if (!is_prime_u64(p)) continue;
    if (mod_of(f.back(), p) == 0) continue;
    Zp F{p};
    NPoly fp = reduce(f, F);
    if (F.gcd(fp, F.deriv(fp)).size() != 1) continue;
    ++tried;
    auto fs = factor_modp(F.monic(fp), F, rng);
    if (best.p == 0 || fs.size() < bestf.size()) {
      best = F;
      bestf = fs;
    }
    if (fs.size() == 1) break;
  }
  if (bestf.size() == 1) {
    out.push_back(f);
    return out;
  }
  // coefficient bound on factors of lc * f
  mpz_class norm2 = 0;
  for (auto& c : f) norm2 += c * c;
  mpz_class nrm;
  mpz_sqrt(nrm.get_mpz_t(), norm2.get_mpz_t());
  nrm += 1;
  mpz_class B = nrm * abs(f.back());
  mpz_mul_2exp(B.get_mpz_t(), B.get_mpz_t(), n + 1);
  int k = 1;
  mpz_class pk(static_cast<unsigned long>(best.p));
  while (pk <= B) {
    pk *= static_cast<unsigned long>(best.p);
    ++k;
  }
  auto G = hensel_lift(f, bestf, best, k);
  std::vector<int> alive(G.size());
  for (size_t i = 0; i < G.size(); ++i) alive[i] = static_cast<int>(i);
  ZPoly rest = f;
  for (int sz = 1; 2 * sz <= static_cast<int>(alive.size());) {
    std::vector<int> cur, hit;
    bool stop = false;
    ZPoly hitp, hitq;
    subsets_rec(static_cast<int>(alive.size()), sz, 0, cur, [&](const std::vector<int>& S) {
      ZPoly P{rest.back()};
      for (int i : S) P = zmulmod(P, G[alive[i]], pk);
      ZPoly c = zprimitive(zsymmetric(P, pk));
      ZPoly q;
      if (c.size() < 2 || !zdivides(rest, c, q)) return false;
      hit = S;
      hitp = c;
      hitq = q;
      return true;
    }, stop);
    if (stop) {
      out.push_back(hitp);
      rest = zprimitive(hitq);
      std::vector<int> na;
      for (size_t i = 0; i < alive.size(); ++i)
        if (std::find(hit.begin(), hit.end(), static_cast<int>(i)) == hit.end()) na.push_back(alive[i]);
      alive = na;
    } else {
      ++sz;
    }
  }
  out.push_back(rest);
  return out;
}

EPoly norm_down(const Field& K, const EPoly& g) {
  const Tower& T = *K.T;
  int L = K.L, M = L - 1;
  int d = T.degree(L);
  std::vector<std::vector<EPoly>> mat(d, std::vector<EPoly>(d));
  Elem zi = T.one(L);
  Elem z = T.gen(L);
  for (int i = 0; i < d; ++i) {
    for (size_t j = 0; j < g.size(); ++j) {
      Elem w = T.mul(L, g[j], zi);
      for (int k2 = 0; k2 < d && k2 < static_cast<int>(w.num.size()); ++k2) {
        EPoly& ent = mat[k2][i];
        if (ent.size() <= j) ent.resize(j + 1, T.zero(M));
        ent[j] = w.num[k2];
      }
    }
    for (auto& row : mat) T.ptrim(M, row[i]);
    zi = T.mul(L, zi, z);
  }
  return T.pmonic(M, det_poly(T, M, mat));
}

std::vector<Factor> squarefree_decomposition(const Field& K, const EPoly& f0) {
  const Tower& T = *K.T;
  int L = K.L;
  EPoly f = T.pmonic(L, f0);
  std::vector<Factor> out;
  if (f.size() <= 1) return out;
  // Yun
  EPoly fp = T.pdiff(L, f);
  EPoly a = T.pgcd(L, f, fp);
  EPoly b = T.pquo(L, f, a);
  EPoly c = T.pquo(L, fp, a);
  EPoly d = T.psub(L, c, T.pdiff(L, b));
  int i = 1;
  while (b.size() > 1) {
    EPoly g = T.pgcd(L, b, d);
    if (g.size() > 1) out.push_back({g, i});
    b = T.pquo(L, b, g);
    c = T.pquo(L, d, g);
    d = T.psub(L, c, T.pdiff(L, b));
    ++i;
  }
  return out;
}

EPoly squarefree_part(const Field& K, const EPoly& f) {
  EPoly r{K.one()};
  for (auto& fa : squarefree_decomposition(K, f)) r = K.T->pmul(K.L, r, fa.f);
  return r;
}

std::vector<Factor> factor(const Field& K, const EPoly& f) {
  std::vector<Factor> out;
  for (auto& sq : squarefree_decomposition(K, f))
    for (auto& g : factor_sqfree(K, sq.f)) out.push_back({g, sq.mult});
  std::sort(out.begin(), out.end(), [&](const Factor& a, const Factor& b) {
    if (a.f.size() != b.f.size()) return a.f.size() < b.f.size();
    if (sort_key_less(K, a.f, b.f)) return true;
    if (sort_key_less(K, b.f, a.f)) return false;
    return a.mult < b.mult;
  });
  return out;
}

bool is_irreducible(const Field& K, const EPoly& f) {
  auto fs = factor(K, f);
  return fs.size() == 1 && fs[0].mult == 1 && fs[0].f.size() == f.size();
}

std::vector<Elem> roots(const Field& K, const EPoly& f) {
  std::vector<Elem> out;
  for (auto& fa : factor(K, f))
    if (fa.f.size() == 2) out.push_back(K.neg(fa.f[0]));
  return out;
}

Field adjoin_root(const Field& K, const std::string& name, const EPoly& minpoly) {
  EPoly m = K.T->pmonic(K.L, minpoly);
  if (!is_irreducible(K, m)) throw Error(Error::Kind::Domain, "polynomial is reducible over the base: " + K.T->pstr(K.L, m, name));
  auto T = K.T->adjoin_algebraic(K.L, name, m);
  return Field(T, K.L + 1);
}

}  // namespace pvforge
