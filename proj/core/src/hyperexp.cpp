#include "pvforge/hyperexp.hpp"

#include "pvforge/factor.hpp"
#include "pvforge/series.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace pvforge {

// ---------- α ----------

AlphaPoint find_alpha(const DiffIdeal& I, int tower_budget) {
  const DiffRing& D = I.D;
  if (!D.has_d) throw Error(Error::Kind::Domain, "find_alpha needs the inverse determinant");
  int n = D.n, nx = n * n;
  std::vector<std::string> names{D.R.vars[nx]};
  for (int i = 0; i < nx; ++i) names.push_back(D.R.vars[i]);
  PolyRing L = PolyRing(D.R.K, names).with_lex();
  PolyList gens;
  for (auto& g : I.gb) gens.push_back(mp_rename(D.R, g, L));
  PolyList gb = groebner(L, gens);
  if (is_unit_ideal(L, gb)) throw Error(Error::Kind::Domain, "the ideal has no points");
  int nv = L.n();
  std::vector<std::vector<const MPoly*>> by_lead(nv);
  for (auto& g : gb) {
    std::vector<int> s = support_vars(L, g);
    if (!s.empty()) by_lead[s.front()].push_back(&g);
  }

  AlphaPoint out;
  int counter = 0;
  int degree_used = 1;
  std::function<bool(int, const Field&, std::vector<Elem>&, std::vector<std::string>&)> assign;
  assign = [&](int p, const Field& K, std::vector<Elem>& val, std::vector<std::string>& adj) -> bool {
    if (p < 0) {
      out.K = K;
      out.alpha.assign(n, Vec(n));
      for (int i = 0; i < nx; ++i) out.alpha[i / n][i % n] = val[i + 1];
      out.adjoined = adj;
      return true;
    }
    const Tower& T = *K.T;
    EPoly g;
    bool constrained = false;
    for (const MPoly* f : by_lead[p]) {
      EPoly u;
      for (auto& t : f->terms) {
        Elem c = K.embed_from(L.K.L, t.c);
        for (int v = p + 1; v < nv; ++v)
          if (t.m.e[v]) c = K.mul(c, K.pow(val[v], t.m.e[v]));
        int e = t.m.e[p];
        if (static_cast<int>(u.size()) <= e) u.resize(e + 1, K.zero());
        u[e] = K.add(u[e], c);
      }
      T.ptrim(K.L, u);
      if (u.empty()) continue;
      constrained = true;
      g = g.empty() ? u : T.pgcd(K.L, g, u);
    }
    if (!constrained) {
      std::vector<long> tries;
      long ident = 1;
      if (p > 0) ident = ((p - 1) / n == (p - 1) % n) ? 1 : 0;
      tries.push_back(ident);
      for (long v = 0; v <= 3; ++v)
        if (v != ident) tries.push_back(v);
      for (long v : tries) {
        val[p] = K.from_int(v);
        if (assign(p - 1, K, val, adj)) return true;
      }
      return false;
    }
    if (g.size() < 2) return false;
    std::vector<Elem> rs = roots(K, g);
    for (auto& r : rs) {
      val[p] = r;
      if (assign(p - 1, K, val, adj)) return true;
    }
    if (!rs.empty()) return false;
    std::vector<Factor> fs = factor(K, g);
    const Factor* best = nullptr;
    for (auto& f : fs)
      if (!best || f.f.size() < best->f.size()) best = &f;
    int deg = static_cast<int>(best->f.size()) - 1;
    if (degree_used * deg > tower_budget) throw Error(Error::Kind::Bound, "tower budget exhausted while choosing alpha");
    degree_used *= deg;
    std::string name = "a" + std::to_string(++counter);
    Field K2 = adjoin_root(K, name, best->f);
    std::vector<Elem> val2 = val;
    for (int v = p + 1; v < nv; ++v) val2[v] = K2.embed_from(K.L, val[v]);
    val2[p] = K2.gen(K2.L);
    adj.push_back(name);
    if (assign(p - 1, K2, val2, adj)) return true;
    adj.pop_back();
    return false;
  };
  std::vector<Elem> val(nv);
  std::vector<std::string> adj;
  if (!assign(nv - 1, D.R.K, val, adj)) throw Error(Error::Kind::Domain, "no invertible point found");
  return out;
}

// ---------- quotient ----------

QuotientBasis quotient_connection(const DiffIdeal& Q1, int kappa) {
  QuotientBasis Q;
  Q.D = without_d(Q1.D);
  Q.gb = contract_to_x(Q1);
  Q.kappa = kappa;
  Q.monos = standard_monomials(Q.D.R, Q.gb, kappa);
  const PolyRing& R = Q.D.R;
  std::map<std::vector<std::uint16_t>, int> idx;
  for (size_t i = 0; i < Q.monos.size(); ++i)
    idx[std::vector<std::uint16_t>(Q.monos[i].e.begin(), Q.monos[i].e.begin() + R.n())] = static_cast<int>(i);
  for (auto& m : Q.monos) {
    MPoly p = mp_from_terms(R, {Term{m, R.K.one()}});
    MPoly r = normal_form(R, delta(Q.D, p), Q.gb);
    Vec row(Q.monos.size(), R.K.zero());
    for (auto& t : r.terms) row[idx.at(std::vector<std::uint16_t>(t.m.e.begin(), t.m.e.begin() + R.n()))] = t.c;
    Q.B.push_back(row);
  }
  return Q;
}

// ---------- hyperexponential solutions ----------

namespace {

int pdeg(const EPoly& p) { return static_cast<int>(p.size()) - 1; }

std::vector<Elem> eigenvalues_in(const Field& C, const Mat& M) {
  int s = static_cast<int>(M.size());
  if (s == 0) return {};
  Field X(C.T->adjoin_transcendental(C.L, "_x"), C.L + 1);
  Mat A(s, Vec(s));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      Elem m = X.embed_from(C.L, M[i][j]);
      A[i][j] = i == j ? X.sub(X.gen(X.L), m) : X.neg(m);
    }
  Elem det = determinant(X, A);
  EPoly cp = det.num;
  std::vector<Elem> out;
  for (auto& r : roots(C, cp)) {
    bool seen = false;
    for (auto& o : out)
      if (C.eq(o, r)) seen = true;
    if (!seen) out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [&](const Elem& a, const Elem& b) { return C.cmp(a, b) < 0; });
  return out;
}

bool integer_value(const Field& C, const Elem& a, long& out) {
  std::vector<mpq_class> q = rational_coordinates(C, a);
  for (size_t i = 1; i < q.size(); ++i)
    if (q[i] != 0) return false;
  if (q[0].get_den() != 1) return false;
  out = q[0].get_num().get_si();
  return true;
}

Elem reduce_mod_z(const Field& C, const Elem& a) {
  std::vector<mpq_class> q = rational_coordinates(C, a);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q[0].get_num_mpz_t(), q[0].get_den_mpz_t());
  return C.sub(a, C.from_rat(mpq_class(fl)));
}

int multiplicity(const Tower& T, int L, EPoly den, const EPoly& q) {
  int m = 0;
  for (;;) {
    EPoly quo, rem;
    T.pdivrem(L, den, q, quo, rem);
    if (!rem.empty()) return m;
    ++m;
    den = quo;
  }
}

}  // namespace

std::vector<ExpSolution> hyperexp_solutions(const Field& K, const Mat& M, const HyperexpConfig& cfg) {
  if (K.L == 0 || K.top().kind != LevelKind::Transcendental)
    throw Error(Error::Kind::Unsupported, "hyperexponential solutions are only computed over C(t)");
  Field C = K.base();
  const Tower& T = *K.T;
  int cl = C.L;
  int s = static_cast<int>(M.size());
  std::vector<ExpSolution> out;
  if (s == 0) return out;

  Mat Minf(s, Vec(s, C.zero())), Rinf(s, Vec(s, C.zero()));
  bool decays = true;
  std::vector<Elem> entries;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      const Elem& m = M[i][j];
      if (K.is_zero(m)) continue;
      entries.push_back(m);
      int dn = pdeg(m.num), dd = pdeg(m.den);
      if (dn > dd) throw Error(Error::Kind::Unsupported, "irregular singularity at infinity");
      Elem lc = C.div(m.num.back(), m.den.back());
      if (dn == dd) {
        Minf[i][j] = lc;
        decays = false;
      } else if (dn == dd - 1) {
        Rinf[i][j] = lc;
      }
    }
  std::vector<Elem> lams = decays ? std::vector<Elem>{C.zero()} : eigenvalues_in(C, Minf);

  struct Pole {
    EPoly q;
    bool linear = false;
    Mat R;
    std::vector<Elem> eig;
    std::vector<Elem> reps;
  };
  std::vector<Pole> poles;
  for (const EPoly& q : pole_support(K, entries)) {
    Pole p;
    p.q = q;
    int mult = 0;
    for (const Elem& e : entries) mult = std::max(mult, multiplicity(T, cl, e.den, q));
    if (mult > 1)
      throw Error(Error::Kind::Unsupported, "irregular singularity at " + T.pstr(cl, q, K.top().name) + " = 0");
    p.linear = q.size() == 2;
    if (p.linear) {
      Elem a = C.neg(q[0]);
      p.R.assign(s, Vec(s, C.zero()));
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
          const Elem& m = M[i][j];
          if (K.is_zero(m) || multiplicity(T, cl, m.den, q) == 0) continue;
          EPoly rest = T.pquo(cl, m.den, q);
          p.R[i][j] = C.div(T.peval(cl, m.num, a), T.peval(cl, rest, a));
        }
      p.eig = eigenvalues_in(C, p.R);
      if (p.eig.empty()) return out;
      for (auto& e : p.eig) {
        Elem r = reduce_mod_z(C, e);
        bool seen = false;
        for (auto& o : p.reps)
          if (C.eq(o, r)) seen = true;
        if (!seen) p.reps.push_back(r);
      }
    } else {
      p.reps.push_back(C.zero());
    }
    poles.push_back(std::move(p));
  }
  std::vector<Elem> rinf_eig = decays ? eigenvalues_in(C, Rinf) : std::vector<Elem>{};

  std::vector<size_t> choice(poles.size(), 0);
  for (const Elem& lam : lams) {
    std::fill(choice.begin(), choice.end(), 0);
    for (;;) {
      // candidate ρ = λ + Σ e_a / q_a
      Elem rho = K.embed_from(cl, lam);
      Elem esum = C.zero();
      EPoly den{T.one(cl)};
      bool ok = true;
      for (size_t k = 0; k < poles.size() && ok; ++k) {
        const Pole& p = poles[k];
        const Elem& e = p.reps[choice[k]];
        if (!C.is_zero(e)) rho = K.add(rho, T.frac(K.L, EPoly{e}, p.q));
        if (!p.linear) continue;
        esum = C.add(esum, e);
        long vmin = 0;
        bool any = false;
        for (auto& mu : p.eig) {
          long v;
          if (!integer_value(C, C.sub(mu, e), v)) continue;
          vmin = any ? std::min(vmin, v) : v;
          any = true;
        }
        if (!any) ok = false;
        for (long i = 0; ok && i < -vmin; ++i) den = T.pmul(cl, den, p.q);
      }
      int dp = -1;
      if (ok) {
        if (decays) {
          long kmax = 0;
          bool any = false;
          for (auto& mu : rinf_eig) {
            long v;
            if (!integer_value(C, C.sub(mu, esum), v)) continue;
            kmax = any ? std::max(kmax, v) : v;
            any = true;
          }
          if (any) dp = static_cast<int>(kmax) + pdeg(den);
        } else {
          dp = pdeg(den) + cfg.degree;
        }
      }
      if (dp >= 0) {
        // p' = (M - ρ + Den'/Den) p, cleared by the lcm of denominators
        Elem shift = K.sub(T.frac(K.L, T.pdiff(cl, den), den), rho);
        Mat Mp = M;
        for (int i = 0; i < s; ++i) Mp[i][i] = K.add(Mp[i][i], shift);
        EPoly lcm{T.one(cl)};
        for (auto& row : Mp)
          for (auto& m : row)
            if (!K.is_zero(m)) lcm = T.pmul(cl, lcm, T.pquo(cl, m.den, T.pgcd(cl, lcm, m.den)));
        std::vector<std::vector<EPoly>> LM(s, std::vector<EPoly>(s));
        int maxd = pdeg(lcm);
        for (int i = 0; i < s; ++i)
          for (int j = 0; j < s; ++j)
            if (!K.is_zero(Mp[i][j])) {
              LM[i][j] = T.pmul(cl, Mp[i][j].num, T.pquo(cl, lcm, Mp[i][j].den));
              maxd = std::max(maxd, pdeg(LM[i][j]));
            }
        int nu = s * (dp + 1);
        int rows = s * (dp + maxd + 1);
        Mat sys(rows, Vec(nu, C.zero()));
        auto coef = [&](const EPoly& p, int e) { return (e >= 0 && e < static_cast<int>(p.size())) ? p[e] : C.zero(); };
        for (int j = 0; j < s; ++j)
          for (int e = 0; e < dp + maxd + 1; ++e) {
            Vec& row = sys[j * (dp + maxd + 1) + e];
            for (int i = 1; i <= dp; ++i) {
              Elem c = coef(lcm, e - (i - 1));
              if (!C.is_zero(c)) row[j * (dp + 1) + i] = C.add(row[j * (dp + 1) + i], C.mul(C.from_int(i), c));
            }
            for (int k = 0; k < s; ++k)
              for (int i = 0; i <= dp; ++i) {
                Elem c = coef(LM[j][k], e - i);
                if (!C.is_zero(c)) row[k * (dp + 1) + i] = C.sub(row[k * (dp + 1) + i], c);
              }
          }
        for (auto& v : kernel(C, sys)) {
          Vec c(s);
          for (int k = 0; k < s; ++k) {
            EPoly p(v.begin() + k * (dp + 1), v.begin() + (k + 1) * (dp + 1));
            T.ptrim(cl, p);
            c[k] = p.empty() ? K.zero() : T.frac(K.L, p, den);
          }
          out.push_back({c, rho});
        }
      }
      size_t k = 0;
      while (k < poles.size() && ++choice[k] == poles[k].reps.size()) choice[k++] = 0;
      if (k == poles.size()) break;
    }
  }
  return out;
}

// ---------- characters ----------

bool character_certificate(const QuotientBasis& Q, const DiffIdeal& Q1, const Character& ch) {
  const PolyRing& RX = Q.D.R;
  MPoly e = mp_sub(RX, delta(Q.D, ch.h), mp_scale(RX, ch.h, ch.r));
  return normal_form(Q1.D.R, mp_rename(RX, e, Q1.D.R), Q1.gb).is_zero();
}

std::vector<Character> normalize_characters(const std::vector<ExpSolution>& sols, const QuotientBasis& Q,
                                            const DiffIdeal& Q1, const Mat& alpha) {
  const PolyRing& RX = Q.D.R;
  const PolyRing& Rd = Q1.D.R;
  const Field& K = RX.K;
  int nx = RX.n();
  std::vector<Elem> pt;
  for (auto& row : alpha)
    for (auto& a : row) pt.push_back(a);
  std::vector<Character> cand;
  for (auto& s : sols) {
    Character ch;
    std::vector<Term> ts;
    for (size_t j = 0; j < s.c.size(); ++j)
      if (!K.is_zero(s.c[j])) {
        ts.push_back(Term{Q.monos[j], s.c[j]});
        ch.degree = std::max(ch.degree, Q.monos[j].deg(nx));
      }
    ch.h = mp_from_terms(RX, ts);
    if (ch.h.is_zero()) continue;
    Elem v = mp_eval(RX, ch.h, pt);
    if (K.is_zero(v)) continue;
    ch.h = mp_scale(RX, ch.h, K.inv(v));
    ch.r = K.sub(K.neg(s.rho), K.div(K.derive(v), v));
    cand.push_back(ch);
  }
  std::stable_sort(cand.begin(), cand.end(), [&](const Character& a, const Character& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return K.str(a.r) < K.str(b.r);
  });
  std::vector<Character> acc;
  std::vector<MPoly> accd;
  MPoly one = mp_const(Rd, K.one());
  for (auto& ch : cand) {
    MPoly hd = mp_rename(RX, ch.h, Rd);
    if (normal_form(Rd, mp_sub(Rd, hd, one), Q1.gb).is_zero()) continue;
    PolyList with = Q1.gb;
    with.push_back(hd);
    if (!is_unit_ideal(Rd, groebner(Rd, with))) continue;
    int k = static_cast<int>(acc.size());
    bool redundant = false;
    int box = std::max(1, Q.kappa);
    long total = 1;
    for (int i = 0; i < k; ++i) total *= 2 * box + 1;
    if (k > 0 && total <= 200000) {
      std::vector<int> m(k, -box);
      for (;;) {
        bool nonzero = false;
        for (int x : m) nonzero = nonzero || x != 0;
        if (nonzero) {
          Elem s = K.zero();
          for (int i = 0; i < k; ++i)
            if (m[i]) s = K.add(s, K.mul(K.from_int(m[i]), acc[i].r));
          if (K.eq(s, ch.r)) {
            MPoly lhs = hd, rhs = one;
            for (int i = 0; i < k; ++i) {
              if (m[i] < 0) lhs = normal_form(Rd, mp_mul(Rd, lhs, mp_pow(Rd, accd[i], -m[i])), Q1.gb);
              if (m[i] > 0) rhs = normal_form(Rd, mp_mul(Rd, rhs, mp_pow(Rd, accd[i], m[i])), Q1.gb);
            }
            if (normal_form(Rd, mp_sub(Rd, lhs, rhs), Q1.gb).is_zero()) {
              redundant = true;
              break;
            }
          }
        }
        int i = 0;
        while (i < k && ++m[i] > box) m[i++] = -box;
        if (i == k) break;
      }
    }
    if (redundant) continue;
    if (!character_certificate(Q, Q1, ch)) throw Error(Error::Kind::Verify, "character certificate failed");
    acc.push_back(ch);
    accd.push_back(hd);
  }
  return acc;
}

// ---------- lattice ----------

namespace {

void push_coords(const Field& C, const std::vector<Elem>& per_char, std::vector<std::vector<mpq_class>>& rows, size_t first) {
  size_t l = per_char.size();
  std::vector<std::vector<mpq_class>> q(l);
  size_t dim = 0;
  for (size_t i = 0; i < l; ++i) {
    q[i] = rational_coordinates(C, per_char[i]);
    dim = std::max(dim, q[i].size());
  }
  for (size_t c = first; c < dim; ++c) {
    std::vector<mpq_class> row(l);
    bool nz = false;
    for (size_t i = 0; i < l; ++i) {
      row[i] = c < q[i].size() ? q[i][c] : mpq_class(0);
      nz = nz || row[i] != 0;
    }
    if (nz) rows.push_back(row);
  }
}

Elem coef_at(const Field& C, const EPoly& p, size_t e) { return e < p.size() ? p[e] : C.zero(); }

}  // namespace

CharacterLattice lattice_Z(const Field& K, const std::vector<Elem>& rs) {
  const Tower& T = *K.T;
  int tl = T.trans_level();
  if (K.L != tl) {
    std::vector<Elem> low(rs.size());
    for (size_t i = 0; i < rs.size(); ++i)
      if (!T.lower(K.L, tl, rs[i], low[i]))
        throw Error(Error::Kind::Unsupported, "character certificates outside the rational function field");
    return lattice_Z(Field(K.T, tl), low);
  }
  Field C = K.base();
  size_t l = rs.size();
  CharacterLattice Z;
  if (l == 0) return Z;
  std::vector<PartialFractions> pf;
  for (auto& r : rs) pf.push_back(partial_fractions(K, r));
  std::vector<std::vector<mpq_class>> rows;
  size_t maxp = 0;
  for (auto& p : pf) maxp = std::max(maxp, p.poly.size());
  for (size_t e = 0; e < maxp; ++e) {
    std::vector<Elem> v;
    for (auto& p : pf) v.push_back(coef_at(C, p.poly, e));
    push_coords(C, v, rows, 0);
  }
  for (const EPoly& q : pole_support(K, rs)) {
    std::vector<const PoleTerm*> terms(l, nullptr);
    int order = 0;
    for (size_t i = 0; i < l; ++i)
      for (auto& t : pf[i].poles)
        if (T.peq(C.L, t.q, q)) {
          terms[i] = &t;
          order = std::max(order, t.order());
        }
    size_t dq = q.size() - 1;
    for (int k = 2; k <= order; ++k)
      for (size_t e = 0; e < dq; ++e) {
        std::vector<Elem> v;
        for (size_t i = 0; i < l; ++i)
          v.push_back(terms[i] && terms[i]->order() >= k ? coef_at(C, terms[i]->ladder[k - 1], e) : C.zero());
        push_coords(C, v, rows, 0);
      }
    std::vector<EPoly> ratio(l);
    for (size_t i = 0; i < l; ++i)
      if (terms[i]) ratio[i] = residue_ratio(K, *terms[i]);
    for (size_t e = 0; e < dq; ++e) {
      std::vector<Elem> v;
      for (size_t i = 0; i < l; ++i) v.push_back(coef_at(C, ratio[i], e));
      push_coords(C, v, rows, e == 0 ? 1 : 0);
    }
  }
  ZMat M;
  for (auto& row : rows) {
    mpz_class den = 1;
    for (auto& q : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> zr;
    for (auto& q : row) zr.push_back(mpz_class(q * den));
    M.push_back(zr);
  }
  if (M.empty()) {
    ZMat I(l, std::vector<mpz_class>(l, 0));
    for (size_t i = 0; i < l; ++i) I[i][i] = 1;
    Z.gens = hermite_normal_form(I);
  } else {
    Z.gens = integer_kernel(M, static_cast<int>(l));
  }
  for (auto& g : Z.gens) {
    Elem s = K.zero();
    for (size_t i = 0; i < l; ++i)
      if (g[i] != 0) s = K.add(s, K.mul(K.from_rat(mpq_class(g[i])), rs[i]));
    auto w = is_log_derivative(K, s);
    if (!w) throw Error(Error::Kind::Verify, "lattice generator is not a logarithmic derivative");
    Z.witnesses.push_back(*w);
  }
  return Z;
}

Materialized materialize(const Field& K0, const std::vector<LogDerivWitness>& ws) {
  Materialized M;
  Field K = K0;
  int tl = K.T->trans_level();
  Field Kt(K.T, tl);
  int counter = 0;
  std::vector<std::pair<int, Elem>> fs;
  for (auto& w : ws) {
    mpz_class Dz = 1;
    for (auto& e : w.e) mpz_lcm(Dz.get_mpz_t(), Dz.get_mpz_t(), e.get_den_mpz_t());
    long D = Dz.get_si();
    const Tower& Tt = *Kt.T;
    int cl = tl - 1;
    EPoly num{Tt.one(cl)}, den{Tt.one(cl)};
    for (size_t i = 0; i < w.q.size(); ++i) {
      mpq_class ex = w.e[i] * D;
      long k = ex.get_num().get_si();
      for (long j = 0; j < std::abs(k); ++j) {
        if (k > 0) num = Tt.pmul(cl, num, w.q[i]);
        else den = Tt.pmul(cl, den, w.q[i]);
      }
    }
    Elem g = K.embed_from(tl, Tt.frac(tl, num, den));
    if (D == 1) {
      fs.push_back({K.L, g});
      continue;
    }
    EPoly y(D + 1, K.zero());
    y[0] = K.neg(g);
    y[D] = K.one();
    std::vector<Elem> rts = roots(K, y);
    if (!rts.empty()) {
      fs.push_back({K.L, rts.front()});
      continue;
    }
    std::vector<Factor> fac = factor(K, y);
    const Factor* best = &fac.front();
    for (auto& f : fac)
      if (f.f.size() < best->f.size()) best = &f;
    std::string name = "f" + std::to_string(++counter);
    K = adjoin_root(K, name, best->f);
    M.adjoined.push_back(name);
    fs.push_back({K.L, K.gen(K.L)});
  }
  M.K = K;
  for (auto& [lev, e] : fs) M.f.push_back(K.embed_from(lev, e));
  return M;
}

std::vector<Elem> lattice_constants(const CharacterLattice& Z, const std::vector<Character>& chars,
                                    const DiffRing& X, const Mat& alpha, const Materialized& mat,
                                    const mpq_class& t0, int order) {
  std::vector<Elem> out;
  if (Z.gens.empty()) return out;
  const Field& K = mat.K;
  int from = X.R.K.L;
  DiffRing XK = ring_over(X, K);
  Field C = constant_field(K);
  SeriesEmbedding E(K, C.from_rat(t0), order);
  const SeriesRing& S = E.ring();
  SeriesMatrix F = fundamental_series(E, XK.A);
  int n = X.n;
  Mat g0(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g0[i][j] = E.value(K.embed_from(from, alpha[i][j]));
  SeriesMatrix Fb = series_times_constant(S, F, g0);
  std::vector<Series> hs;
  std::vector<MPoly> hk;
  for (auto& ch : chars) {
    hk.push_back(mp_embed_coeffs(X.R, ch.h, XK.R));
    hs.push_back(eval_poly_on_series(XK.R, hk.back(), Fb, E));
  }
  for (size_t i = 0; i < Z.gens.size(); ++i) {
    Series prod = S.constant(C.one());
    Elem logd = K.zero();
    for (size_t j = 0; j < chars.size(); ++j) {
      long m = Z.gens[i][j].get_si();
      if (m == 0) continue;
      Series h = m > 0 ? hs[j] : S.inv(hs[j]);
      for (long k = 0; k < std::abs(m); ++k) prod = S.mul(prod, h);
      logd = K.add(logd, K.mul(K.from_int(m), K.embed_from(from, chars[j].r)));
    }
    const Elem& f = mat.f[i];
    logd = K.sub(logd, K.div(K.derive(f), f));
    if (!K.is_zero(logd)) throw Error(Error::Kind::Verify, "character product and witness have different log-derivatives");
    Series q = S.mul(prod, S.inv(E(f)));
    Series dq = S.deriv(q);
    for (int k = 0; k + 1 < order; ++k)
      if (!C.is_zero(dq.c[k])) throw Error(Error::Kind::Verify, "lattice constant is not constant on the series");
    out.push_back(K.embed_from(C.L, q.c[0]));
  }
  return out;
}

DiffIdeal assemble_J(const DiffIdeal& Q1, const std::vector<Character>& chars, const CharacterLattice& Z,
                     const Materialized& mat, const std::vector<Elem>& constants, const DiffRing& X) {
  const Field& K = mat.K;
  DiffIdeal Qk = ideal_over(Q1, K);
  const PolyRing& R = Qk.D.R;
  PolyRing XK = X.R.with_field(K);
  std::vector<MPoly> hs;
  for (auto& ch : chars) hs.push_back(mp_rename(XK, mp_embed_coeffs(X.R, ch.h, XK), R));
  PolyList gens = Qk.gens;
  for (size_t i = 0; i < Z.gens.size(); ++i) {
    MPoly pos = mp_const(R, K.one()), neg = mp_const(R, K.one());
    for (size_t j = 0; j < chars.size(); ++j) {
      long m = Z.gens[i][j].get_si();
      if (m > 0) pos = mp_mul(R, pos, mp_pow(R, hs[j], static_cast<int>(m)));
      if (m < 0) neg = mp_mul(R, neg, mp_pow(R, hs[j], static_cast<int>(-m)));
    }
    gens.push_back(mp_sub(R, pos, mp_scale(R, neg, K.mul(constants[i], mat.f[i]))));
  }
  DiffIdeal J = make_ideal(Qk.D, gens);
  if (!is_delta_ideal(J)) throw Error(Error::Kind::Verify, "assembled ideal is not a δ-ideal");
  J.radical = J.prime = true;
  return J;
}

}  // namespace pvforge
